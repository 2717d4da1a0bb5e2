#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ltg/atoms.hpp"
#include "ltg/derivation_store.hpp"
#include "ltg/dnf.hpp"
#include "ltg/error.hpp"
#include "ltg/execution_graph.hpp"
#include "ltg/program.hpp"

namespace ltg {

enum class CollapseMode : std::uint8_t { Off, On, Auto };

struct ReasonerOptions {
    CollapseMode collapse = CollapseMode::Off;
    /// Average trees per root at which `Auto` collapses a node.
    std::uint32_t threshold = 10;
    /// Stop after this many rounds; the result is then flagged truncated.
    std::optional<std::uint32_t> max_depth;
    /// Upper bound on allocated derivation entries; exceeding it throws ResourceLimitError.
    std::optional<std::size_t> max_entries;
    /// Upper bound on execution-graph nodes (removed ones included); checked before each extension.
    std::optional<std::size_t> max_nodes;
    /// Discard derivation trees that repeat their root. Disabling it (together with
    /// max_depth) gives the unpruned per-round trees used for cross-checking.
    bool prune_redundant = true;
    /// Do not create nodes whose parents cannot agree on a join variable, judged by Bloom
    /// masks of the parents' root arguments. Rounds and lineage are unaffected.
    bool skip_unjoinable = false;
};

struct RoundStats {
    std::uint32_t round = 0;
    std::size_t new_nodes = 0;
    std::size_t removed_nodes = 0;
    std::size_t live_nodes = 0;
    std::size_t candidate_trees = 0;    // trees(alpha, v, F) produced this round
    std::size_t stored_entries = 0;     // cumulative stored trees
    std::size_t allocated_entries = 0;  // cumulative entries incl. OR constituents
    std::size_t or_entries = 0;         // cumulative stored OR entries
    double millis = 0.0;
};

class ResourceLimitError : public Error {
public:
    ResourceLimitError(const std::string& what, std::vector<RoundStats> rounds)
        : Error(ErrorKind::ResourceLimit, what), rounds_(std::move(rounds)) {}
    const std::vector<RoundStats>& rounds() const noexcept { return rounds_; }

private:
    std::vector<RoundStats> rounds_;
};

/// A lineage trigger graph with its populated node stores.
struct ReasoningResult {
    std::shared_ptr<const Program> program;  // normalized
    AtomTable atoms;
    ExecutionGraph graph;
    StoreSet stores;
    /// Number of rounds that instantiated at least one node. The last such round
    /// may have had all of its nodes removed, so `rounds` can exceed graph.depth().
    std::uint32_t rounds = 0;
    bool truncated = false;
    std::vector<RoundStats> per_round;
    /// Stored (published) entries by root, in node-id order.
    std::unordered_map<AtomId, std::vector<ChildRef>> by_root;

    explicit ReasoningResult(std::shared_ptr<const Program> prog) : program(std::move(prog)), atoms(*program) {}

    std::size_t stored_entries() const;
    std::size_t or_entries() const;
    std::span<const ChildRef> entries_for(AtomId root) const;
};

/// Probabilistic reasoning without collapsing. `opts.collapse` is ignored.
ReasoningResult run_pr(const Program& normalized, ReasonerOptions opts = {});

/// Probabilistic reasoning with per-node collapsing (`On` or `Auto`).
ReasoningResult run_pcor(const Program& normalized, ReasonerOptions opts);

/// Dispatches on `opts.collapse`.
ReasoningResult reason(const Program& normalized, const ReasonerOptions& opts);

/// Lineage of every derived atom using only trees stored in nodes of depth <= k.
std::unordered_map<AtomId, Dnf> round_bound_snapshot(const ReasoningResult& result, std::uint32_t k,
                                                     std::size_t clause_cap = kDefaultClauseCap);

}  // namespace ltg
