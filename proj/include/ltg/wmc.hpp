#pragma once

#include <cstddef>
#include <vector>

#include "ltg/dnf.hpp"
#include "ltg/program.hpp"

namespace ltg {

/// Probability of each fact variable being true, indexed by variable.
class VarWeights {
public:
    VarWeights() = default;
    explicit VarWeights(std::vector<double> by_var) : w_(std::move(by_var)) {}
    static VarWeights of(const Program& prog);

    /// Throws ErrorKind::Contract for a variable without weight.
    double at(FactVar v) const;
    void set(FactVar v, double p);
    std::size_t size() const noexcept { return w_.size(); }

private:
    std::vector<double> w_;
};

struct WmcOptions {
    std::size_t cache_capacity = 1'000'000;  // LRU entries
    std::size_t max_calls = 20'000'000;      // recursion budget
};

/// Exact probability of a monotone DNF under independent variables.
/// Weight-1 variables are conditioned away, variable-disjoint components are
/// combined as independent disjuncts, and otherwise the formula is Shannon-expanded
/// on the variable occurring in the most clauses (ties: lowest id), memoized on the
/// residual clause set. Throws ErrorKind::WmcBudget when the call budget runs out.
double probability(const Dnf& d, const VarWeights& w, const WmcOptions& opts = {});

/// Sum over all assignments of the relevant variables (at most 25).
double brute_force_probability(const Dnf& d, const VarWeights& w);

}  // namespace ltg
