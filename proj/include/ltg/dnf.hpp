#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ltg/program.hpp"

namespace ltg {

/// Sorted, duplicate-free conjunction of fact variables.
using Clause = std::vector<FactVar>;

inline constexpr std::size_t kDefaultClauseCap = 1'000'000;

/// Monotone DNF over fact variables in absorption-normal form: clauses are sorted,
/// unique and no clause contains another. For monotone formulas this form is
/// canonical (the set of prime implicants), so equal Boolean functions have equal
/// representations. No clauses is FALSE; the single empty clause is TRUE.
class Dnf {
public:
    Dnf() = default;

    static Dnf falsity() { return {}; }
    static Dnf truth();
    static Dnf literal(FactVar var);
    /// Normalizes arbitrary clauses (unsorted, duplicated, absorbed).
    static Dnf from_clauses(std::vector<Clause> clauses, std::size_t cap = kDefaultClauseCap);

    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    std::size_t size() const noexcept { return clauses_.size(); }
    bool is_false() const noexcept { return clauses_.empty(); }
    bool is_true() const noexcept { return clauses_.size() == 1 && clauses_[0].empty(); }

    /// Distinct variables, ascending.
    std::vector<FactVar> variables() const;
    bool evaluate(const std::function<bool(FactVar)>& value) const;

    /// `[["e(a,b)"],["e(a,c)","e(c,b)"]]`-style rendering with the given variable names,
    /// clause literals and clause list sorted by text.
    std::vector<std::vector<std::string>> named(const std::function<std::string(FactVar)>& name) const;
    std::string to_string(const std::function<std::string(FactVar)>& name) const;

    friend bool operator==(const Dnf&, const Dnf&) = default;

private:
    std::vector<Clause> clauses_;
};

/// Absorption-normalizes in place. Throws ErrorKind::LineageTooLarge when more than `cap` clauses survive.
void minimize(std::vector<Clause>& clauses, std::size_t cap = kDefaultClauseCap);

Dnf disjoin(const Dnf& a, const Dnf& b, std::size_t cap = kDefaultClauseCap);
Dnf conjoin(const Dnf& a, const Dnf& b, std::size_t cap = kDefaultClauseCap);

}  // namespace ltg
