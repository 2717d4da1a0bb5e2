#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ltg {

using SymbolId = std::uint32_t;
using FactVar = std::uint32_t;

enum class SymbolKind : std::uint8_t { Constant, Predicate, Variable };

/// Bijective string <-> id map for one symbol kind.
class Interner {
public:
    SymbolId intern(std::string_view text);
    std::optional<SymbolId> find(std::string_view text) const;
    const std::string& text(SymbolId id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
};

struct PredicateInfo {
    std::string name;
    std::size_t arity = 0;
};

/// Symbols of one program. Constants, predicates and variables live in separate namespaces.
class SymbolTable {
public:
    SymbolId constant(std::string_view name) { return constants_.intern(name); }
    SymbolId variable(std::string_view name) { return variables_.intern(name); }
    /// Interns a predicate; returns nullopt if it exists with a different arity.
    std::optional<SymbolId> predicate(std::string_view name, std::size_t arity);
    std::optional<SymbolId> find_predicate(std::string_view name) const { return predicates_.find(name); }
    std::optional<SymbolId> find_constant(std::string_view name) const { return constants_.find(name); }

    /// A predicate name derived from `base` that is not yet in use.
    std::string fresh_predicate_name(std::string_view base) const;

    const std::string& constant_name(SymbolId id) const { return constants_.text(id); }
    const std::string& variable_name(SymbolId id) const { return variables_.text(id); }
    const std::string& predicate_name(SymbolId id) const { return predicates_.text(id); }
    std::size_t arity(SymbolId pred) const { return arities_.at(pred); }
    std::size_t predicate_count() const noexcept { return predicates_.size(); }
    std::size_t constant_count() const noexcept { return constants_.size(); }
    std::size_t variable_count() const noexcept { return variables_.size(); }

private:
    Interner constants_;
    Interner predicates_;
    Interner variables_;
    std::vector<std::size_t> arities_;
};

struct Term {
    SymbolId id = 0;
    bool variable = false;

    static Term constant(SymbolId id) { return {id, false}; }
    static Term var(SymbolId id) { return {id, true}; }
    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    SymbolId predicate = 0;
    std::vector<Term> args;

    bool ground() const;
    friend bool operator==(const Atom&, const Atom&) = default;
};

enum class RuleKind : std::uint8_t { Base, NonBase, Mixed };

struct Rule {
    std::uint32_t id = 0;
    Atom head;
    std::vector<Atom> body;
    RuleKind kind = RuleKind::Mixed;
};

struct ProbFact {
    Atom fact;
    double prob = 1.0;
    FactVar var = 0;
};

/// Variable -> constant bindings, indexed by variable symbol id.
class Substitution {
public:
    void bind(SymbolId var, SymbolId constant);
    std::optional<SymbolId> lookup(SymbolId var) const;
    /// Applies the bindings; unbound variables are left in place.
    Atom apply(const Atom& atom) const;

private:
    std::vector<std::optional<SymbolId>> bindings_;
};

/// Rules, probabilistic facts and query atoms over one symbol table.
/// Fact variables are the fact's position in `facts`.
struct Program {
    SymbolTable symbols;
    std::vector<Rule> rules;
    std::vector<ProbFact> facts;
    std::vector<Atom> queries;

    /// True iff the predicate appears in the head of some rule.
    bool is_derived(SymbolId pred) const;
    /// Assigns base / nonBase / mixed tags from the current database/derived split.
    void classify_rules();

    std::string render(const Atom& atom) const;
    std::string render(const Rule& rule) const;
};

/// Program text in the input grammar. Parsing the result yields a structurally equal program.
std::string serialize(const Program& prog);

/// Compares programs by symbol names rather than ids.
bool structurally_equal(const Program& a, const Program& b);

}  // namespace ltg
