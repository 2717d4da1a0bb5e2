#include "support.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ltg::fixtures {
namespace {

std::string pick(std::mt19937_64& rng, const std::vector<std::string>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

std::string probability_prefix(std::mt19937_64& rng) {
    int tenth = std::uniform_int_distribution<int>(1, 10)(rng);
    if (tenth == 10) return "";
    return "0." + std::to_string(tenth) + "::";
}

}  // namespace

std::string random_program_text(std::mt19937_64& rng, const RandomProgramOptions& opts) {
    std::vector<std::string> consts;
    for (std::size_t i = 0; i < opts.constants; ++i) consts.push_back(std::string(1, static_cast<char>('a' + i)));

    std::vector<std::string> rules = {"p(X,Y) :- e(X,Y)."};
    rules.push_back(pick(rng, {"p(X,Y) :- p(X,Z), p(Z,Y).", "p(X,Y) :- e(X,Z), p(Z,Y).", "p(X,Y) :- p(X,Z), e(Z,Y)."}));
    const std::vector<std::string> extra = {
        "q(X) :- f(X).",
        "q(X) :- p(X,Y), f(Y).",
        "s(X,Y) :- p(Y,X).",
        "s(X,Y) :- q(X), e(X,Y).",
        "q(X) :- s(X,X).",
        "q(Y) :- e(X,Y), f(X).",
        "s(X,Y) :- s(X,Z), e(Z,Y).",
        "p(X,Y) :- q(X), q(Y), e(X,Y).",
    };
    std::size_t n_rules = std::uniform_int_distribution<std::size_t>(2, opts.max_rules)(rng);
    std::size_t dummies = 0;
    while (rules.size() < n_rules) {
        std::string r = pick(rng, extra);
        if (std::find(rules.begin(), rules.end(), r) != rules.end()) continue;
        if (opts.rule_probabilities && dummies < 2 && rng() % 4 == 0) {
            r = "0." + std::to_string(std::uniform_int_distribution<int>(3, 9)(rng)) + "::" + r;
            ++dummies;
        }
        rules.push_back(r);
    }

    std::set<std::string> facts;
    std::vector<std::string> ordered;
    const std::size_t limit = opts.max_facts - dummies;
    std::size_t n_facts = std::uniform_int_distribution<std::size_t>(std::min<std::size_t>(3, limit), limit)(rng);
    int attempts = 0;
    while (ordered.size() < n_facts && attempts++ < 1000) {
        std::string f;
        int kind = std::uniform_int_distribution<int>(0, 9)(rng);
        if (kind < 6)
            f = "e(" + pick(rng, consts) + "," + pick(rng, consts) + ")";
        else if (kind < 9 || !opts.facts_on_derived)
            f = "f(" + pick(rng, consts) + ")";
        else
            f = "p(" + pick(rng, consts) + "," + pick(rng, consts) + ")";
        if (facts.insert(f).second) ordered.push_back(f);
    }

    std::ostringstream os;
    for (const auto& f : ordered) os << probability_prefix(rng) << f << ".\n";
    // Keep f/1 known to the parser even when no f fact was drawn.
    bool has_f = std::any_of(ordered.begin(), ordered.end(), [](const std::string& s) { return s[0] == 'f'; });
    for (const auto& r : rules) {
        if (!has_f && r.find("f(") != std::string::npos) continue;
        os << r << '\n';
    }
    os << "query(p(X,Y)).\n";
    return os.str();
}

std::set<std::string> least_model(const Program& prog, const std::vector<bool>& world) {
    using Tuple = std::vector<std::string>;
    std::map<std::string, std::set<Tuple>> rel;
    const auto& sym = prog.symbols;
    auto name_of = [&](const Term& t) { return t.variable ? sym.variable_name(t.id) : sym.constant_name(t.id); };

    for (const auto& f : prog.facts) {
        if (!world.empty() && !world[f.var]) continue;
        Tuple t;
        for (const auto& a : f.fact.args) t.push_back(name_of(a));
        rel[sym.predicate_name(f.fact.predicate)].insert(t);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : prog.rules) {
            std::vector<std::pair<std::string, Tuple>> derived;
            std::map<std::string, std::string> binding;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == r.body.size()) {
                    Tuple h;
                    for (const auto& a : r.head.args) h.push_back(a.variable ? binding.at(name_of(a)) : name_of(a));
                    derived.emplace_back(sym.predicate_name(r.head.predicate), h);
                    return;
                }
                const Atom& atom = r.body[i];
                auto it = rel.find(sym.predicate_name(atom.predicate));
                if (it == rel.end()) return;
                for (const Tuple& t : it->second) {
                    auto saved = binding;
                    bool ok = true;
                    for (std::size_t j = 0; j < atom.args.size() && ok; ++j) {
                        const Term& term = atom.args[j];
                        if (!term.variable) {
                            ok = name_of(term) == t[j];
                        } else {
                            auto [b, fresh] = binding.try_emplace(name_of(term), t[j]);
                            ok = fresh || b->second == t[j];
                        }
                    }
                    if (ok) rec(i + 1);
                    binding = std::move(saved);
                }
            };
            rec(0);
            for (auto& [pred, t] : derived)
                if (rel[pred].insert(t).second) changed = true;
        }
    }

    std::set<std::string> out;
    for (const auto& [pred, tuples] : rel) {
        for (const auto& t : tuples) {
            std::string s = pred;
            if (!t.empty()) {
                s += '(';
                for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i];
                s += ')';
            }
            out.insert(s);
        }
    }
    return out;
}

std::map<std::string, Dnf> brute_force_lineage(const Program& prog) {
    const std::size_t n = prog.facts.size();
    std::map<std::string, std::vector<Clause>> worlds;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<bool> world(n);
        Clause c;
        for (std::size_t i = 0; i < n; ++i) {
            world[i] = (mask >> i) & 1;
            if (world[i]) c.push_back(static_cast<FactVar>(i));
        }
        for (const auto& atom : least_model(prog, world)) worlds[atom].push_back(c);
    }
    std::map<std::string, Dnf> out;
    for (auto& [atom, cs] : worlds) out.emplace(atom, Dnf::from_clauses(std::move(cs), 1u << 20));
    return out;
}

Dnf random_dnf(std::mt19937_64& rng, std::size_t vars, std::size_t max_clauses, std::size_t max_width) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_clauses)(rng);
    std::vector<Clause> cs;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t w = std::uniform_int_distribution<std::size_t>(1, max_width)(rng);
        Clause c;
        for (std::size_t j = 0; j < w; ++j)
            c.push_back(static_cast<FactVar>(std::uniform_int_distribution<std::size_t>(0, vars - 1)(rng)));
        cs.push_back(std::move(c));
    }
    return Dnf::from_clauses(std::move(cs));
}

std::string running_example(double p) {
    std::ostringstream os;
    os.precision(17);
    for (const char* e : {"e(a,b)", "e(b,c)", "e(a,c)", "e(c,b)"}) os << p << "::" << e << ".\n";
    os << "p(X,Y) :- e(X,Y).\n"
          "p(X,Y) :- p(X,Z), p(Z,Y).\n"
          "query(p(a,b)).\n";
    return os.str();
}

std::string collapse_example(std::size_t n, double p) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 1; i <= n; ++i) os << p << "::q(a,b" << i << ").\n";
    os << p << "::s(a,b1).\n"
       << "r(X,Y) :- q(X,Y).\n"
          "t(X) :- r(X,Y).\n"
          "r(X,Y) :- t(X), s(X,Y).\n";
    return os.str();
}

}  // namespace ltg::fixtures
