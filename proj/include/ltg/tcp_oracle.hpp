#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ltg/atoms.hpp"
#include "ltg/dnf.hpp"
#include "ltg/program.hpp"

namespace ltg {

enum class TcpMode : std::uint8_t { Naive, Delta };

/// One round of the lineage-annotated immediate consequence operator:
/// each known atom with its lineage formula.
struct TcpInstance {
    std::shared_ptr<const Program> program;
    AtomTable atoms;
    std::vector<Dnf> lambda;    // by atom id, FALSE when unknown
    std::vector<char> present;  // by atom id
    std::vector<char> updated;  // changed (not equivalent) in the last round
    std::uint32_t round = 0;
    std::size_t instantiations = 0;  // cumulative rule instantiations
    bool approximate = false;        // some equivalence verdict was not exact
    std::uint64_t seed = 0x5eed;     // random weights for large equivalence checks

    explicit TcpInstance(std::shared_ptr<const Program> prog) : program(std::move(prog)), atoms(*program) {}

    bool known(AtomId a) const { return a < present.size() && present[a]; }
    bool any_updated() const;
};

/// Round 0: every database fact annotated with its own variable.
TcpInstance tcp_initial(const Program& prog, std::uint64_t seed = 0x5eed);

/// One derivation/aggregation/filtering round. Naive mode joins all known atoms;
/// delta mode only instantiations with at least one atom updated in the previous round.
TcpInstance tcp_step(const TcpInstance& inst, TcpMode mode = TcpMode::Naive,
                     std::size_t clause_cap = kDefaultClauseCap);

struct TcpRun {
    TcpInstance final;
    std::vector<TcpInstance> history;  // rounds 0..n when requested
    bool converged = false;
};

/// Iterates until no formula changes or `max_rounds` is reached.
TcpRun tcp_fixpoint(const Program& prog, TcpMode mode, std::uint32_t max_rounds = 64, bool keep_history = false,
                    std::size_t clause_cap = kDefaultClauseCap, std::uint64_t seed = 0x5eed);

}  // namespace ltg
