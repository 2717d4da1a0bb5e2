#pragma once

#include <cstdint>

#include "ltg/dnf.hpp"

namespace ltg {

inline constexpr std::size_t kTruthTableVars = 20;

struct EquivalenceCheck {
    bool equivalent = false;
    /// False when the verdict comes from random-weight probability comparison
    /// (more than kTruthTableVars variables) rather than a full truth table.
    bool exact = true;
};

/// Exhaustive comparison over the union of variables. Throws ErrorKind::TooManyVariables above 25.
bool truth_table_equivalent(const Dnf& a, const Dnf& b);

/// Equal normal forms short-circuit. Up to kTruthTableVars variables the truth
/// table decides; above that both probabilities are compared at 8 independent
/// random weight vectors within 1e-9.
EquivalenceCheck check_equivalent(const Dnf& a, const Dnf& b, std::uint64_t seed = 0x5eed);

}  // namespace ltg
