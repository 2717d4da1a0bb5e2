#include "ltg/program.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace ltg {

SymbolId Interner::intern(std::string_view text) {
    auto it = ids_.find(std::string(text));
    if (it != ids_.end()) return it->second;
    auto id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(text);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<SymbolId> Interner::find(std::string_view text) const {
    auto it = ids_.find(std::string(text));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<SymbolId> SymbolTable::predicate(std::string_view name, std::size_t arity) {
    if (auto id = predicates_.find(name)) {
        if (arities_[*id] != arity) return std::nullopt;
        return id;
    }
    auto id = predicates_.intern(name);
    arities_.push_back(arity);
    return id;
}

std::string SymbolTable::fresh_predicate_name(std::string_view base) const {
    std::string name(base);
    for (int k = 2; predicates_.find(name); ++k) name = std::string(base) + std::to_string(k);
    return name;
}

bool Atom::ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.variable; });
}

void Substitution::bind(SymbolId var, SymbolId constant) {
    if (bindings_.size() <= var) bindings_.resize(var + 1);
    bindings_[var] = constant;
}

std::optional<SymbolId> Substitution::lookup(SymbolId var) const {
    if (var >= bindings_.size()) return std::nullopt;
    return bindings_[var];
}

Atom Substitution::apply(const Atom& atom) const {
    Atom out = atom;
    for (auto& t : out.args) {
        if (!t.variable) continue;
        if (auto c = lookup(t.id)) t = Term::constant(*c);
    }
    return out;
}

bool Program::is_derived(SymbolId pred) const {
    return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.head.predicate == pred; });
}

void Program::classify_rules() {
    std::vector<bool> derived(symbols.predicate_count(), false);
    for (const auto& r : rules) derived[r.head.predicate] = true;
    for (auto& r : rules) {
        bool any_db = false;
        bool any_derived = false;
        for (const auto& b : r.body) (derived[b.predicate] ? any_derived : any_db) = true;
        r.kind = any_db && any_derived ? RuleKind::Mixed : any_derived ? RuleKind::NonBase : RuleKind::Base;
    }
}

std::string Program::render(const Atom& atom) const {
    std::string out = symbols.predicate_name(atom.predicate);
    if (atom.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) out += ',';
        const auto& t = atom.args[i];
        out += t.variable ? symbols.variable_name(t.id) : symbols.constant_name(t.id);
    }
    out += ')';
    return out;
}

std::string Program::render(const Rule& rule) const {
    std::string out = render(rule.head) + " :- ";
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        if (i) out += ", ";
        out += render(rule.body[i]);
    }
    return out + ".";
}

namespace {

std::string format_prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

}  // namespace

std::string serialize(const Program& prog) {
    std::ostringstream os;
    for (const auto& f : prog.facts) {
        if (f.prob != 1.0) os << format_prob(f.prob) << "::";
        os << prog.render(f.fact) << ".\n";
    }
    for (const auto& r : prog.rules) os << prog.render(r) << "\n";
    for (const auto& q : prog.queries) os << "query(" << prog.render(q) << ").\n";
    return os.str();
}

bool structurally_equal(const Program& a, const Program& b) {
    if (a.rules.size() != b.rules.size() || a.facts.size() != b.facts.size() ||
        a.queries.size() != b.queries.size())
        return false;
    for (std::size_t i = 0; i < a.facts.size(); ++i) {
        if (a.render(a.facts[i].fact) != b.render(b.facts[i].fact)) return false;
        if (a.facts[i].prob != b.facts[i].prob || a.facts[i].var != b.facts[i].var) return false;
    }
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        if (a.render(a.rules[i]) != b.render(b.rules[i]) || a.rules[i].kind != b.rules[i].kind) return false;
    }
    for (std::size_t i = 0; i < a.queries.size(); ++i) {
        if (a.render(a.queries[i]) != b.render(b.queries[i])) return false;
    }
    return true;
}

}  // namespace ltg
