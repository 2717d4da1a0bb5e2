#include "ltg/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ltg/error.hpp"
#include "ltg/wmc.hpp"

namespace ltg {

bool truth_table_equivalent(const Dnf& a, const Dnf& b) {
    auto vars = a.variables();
    auto vb = b.variables();
    vars.insert(vars.end(), vb.begin(), vb.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > 25) throw Error(ErrorKind::TooManyVariables, "truth table limited to 25 variables");

    auto masks = [&](const Dnf& d) {
        std::vector<std::uint32_t> out;
        for (const auto& c : d.clauses()) {
            std::uint32_t m = 0;
            for (FactVar v : c) m |= 1u << (std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
            out.push_back(m);
        }
        return out;
    };
    auto ma = masks(a);
    auto mb = masks(b);
    auto holds = [](const std::vector<std::uint32_t>& ms, std::uint32_t world) {
        return std::any_of(ms.begin(), ms.end(), [&](std::uint32_t m) { return (world & m) == m; });
    };
    const std::uint64_t worlds = std::uint64_t{1} << vars.size();
    for (std::uint64_t w = 0; w < worlds; ++w) {
        auto world = static_cast<std::uint32_t>(w);
        if (holds(ma, world) != holds(mb, world)) return false;
    }
    return true;
}

EquivalenceCheck check_equivalent(const Dnf& a, const Dnf& b, std::uint64_t seed) {
    if (a == b) return {true, true};
    auto vars = a.variables();
    auto vb = b.variables();
    vars.insert(vars.end(), vb.begin(), vb.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() <= kTruthTableVars) return {truth_table_equivalent(a, b), true};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int trial = 0; trial < 8; ++trial) {
        VarWeights w;
        for (FactVar v : vars) w.set(v, unit(rng));
        if (std::abs(probability(a, w) - probability(b, w)) > 1e-9) return {false, false};
    }
    return {true, false};
}

}  // namespace ltg
