#include "ltg/normalize.hpp"

#include <map>
#include <string>

#include "ltg/error.hpp"

namespace ltg {
namespace {

// p'(X1..Xn) :- p(X1..Xn).
Rule copy_rule(Program& prog, SymbolId head_pred, SymbolId body_pred) {
    Rule r;
    r.id = static_cast<std::uint32_t>(prog.rules.size());
    r.head.predicate = head_pred;
    r.body.push_back({body_pred, {}});
    for (std::size_t i = 0; i < prog.symbols.arity(body_pred); ++i) {
        auto v = Term::var(prog.symbols.variable("X" + std::to_string(i + 1)));
        r.head.args.push_back(v);
        r.body.back().args.push_back(v);
    }
    return r;
}

}  // namespace

Program normalize(const Program& in) {
    Program prog = in;
    const std::size_t original_preds = prog.symbols.predicate_count();

    std::vector<bool> heads(original_preds, false);
    std::vector<bool> has_facts(original_preds, false);
    for (const auto& r : prog.rules) heads[r.head.predicate] = true;
    for (const auto& f : prog.facts) has_facts[f.fact.predicate] = true;

    // Predicates that both own facts and head rules: facts move to a fresh database predicate.
    std::map<SymbolId, SymbolId> fact_home;
    for (SymbolId p = 0; p < original_preds; ++p) {
        if (!(heads[p] && has_facts[p])) continue;
        auto name = prog.symbols.fresh_predicate_name(prog.symbols.predicate_name(p) + "_db");
        fact_home[p] = *prog.symbols.predicate(name, prog.symbols.arity(p));
    }
    for (auto& f : prog.facts) {
        if (auto it = fact_home.find(f.fact.predicate); it != fact_home.end()) f.fact.predicate = it->second;
    }
    for (const auto& [derived, db] : fact_home) prog.rules.push_back(copy_rule(prog, derived, db));

    prog.classify_rules();

    // Database predicates inside mixed bodies are replaced by derived copies.
    std::map<SymbolId, SymbolId> derived_copy;
    const std::size_t rule_count = prog.rules.size();
    for (std::size_t i = 0; i < rule_count; ++i) {
        if (prog.rules[i].kind != RuleKind::Mixed) continue;
        for (auto& atom : prog.rules[i].body) {
            if (prog.is_derived(atom.predicate)) continue;
            auto it = derived_copy.find(atom.predicate);
            if (it == derived_copy.end()) {
                auto name = prog.symbols.fresh_predicate_name(prog.symbols.predicate_name(atom.predicate) + "_base");
                auto copy = *prog.symbols.predicate(name, prog.symbols.arity(atom.predicate));
                it = derived_copy.emplace(atom.predicate, copy).first;
                prog.rules.push_back(copy_rule(prog, copy, atom.predicate));
            }
            atom.predicate = it->second;
        }
    }
    prog.classify_rules();
    return prog;
}

std::pair<Rule, ProbFact> desugar_rule_probability(SymbolTable& symbols, const Rule& rule, double prob) {
    if (!(prob > 0.0 && prob <= 1.0))
        throw Error(ErrorKind::Probability, "rule probability " + std::to_string(prob) + " outside (0,1]");
    auto name = symbols.fresh_predicate_name("aux_" + std::to_string(rule.id));
    auto pred = *symbols.predicate(name, 0);
    Rule out = rule;
    out.body.push_back({pred, {}});
    return {std::move(out), ProbFact{{pred, {}}, prob, 0}};
}

}  // namespace ltg
