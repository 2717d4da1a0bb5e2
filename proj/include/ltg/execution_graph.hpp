#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ltg/program.hpp"

namespace ltg {

using NodeId = std::uint32_t;

struct EgNode {
    NodeId id = 0;
    std::uint32_t rule = 0;  // index into Program::rules
    std::uint32_t depth = 0;
    /// parents[j] feeds body atom j; empty for source (base-rule) nodes.
    std::vector<NodeId> parents;
    bool removed = false;
};

/// Canonical execution graph grown one depth level at a time. Edges only point
/// from older nodes to newer ones, so the graph is acyclic by construction.
/// Removed nodes are tombstoned: they keep their id and edges but take no part
/// in enumeration or depth.
class ExecutionGraph {
public:
    const std::vector<EgNode>& nodes() const noexcept { return nodes_; }
    const EgNode& node(NodeId id) const { return nodes_.at(id); }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t live_count() const;

    /// Largest depth among live nodes; 0 for an empty graph.
    std::uint32_t depth() const;

    NodeId add_node(std::uint32_t rule, std::vector<NodeId> parents, std::uint32_t depth);

    /// Throws ErrorKind::UnknownNode for unknown ids and ErrorKind::Contract for removed ones.
    void remove_node(NodeId id);

    void dump(std::ostream& os, const Program& prog) const;

private:
    std::vector<EgNode> nodes_;
};

/// Depth-1 graph with one node per base rule.
ExecutionGraph base_step(const Program& prog);

/// Tuples (u1..un) of live nodes where the head predicate of rule(ui) is the i-th
/// body predicate of `rule`, every depth(ui) < k and some depth(ui) = k-1.
/// Lexicographic in node id.
std::vector<std::vector<NodeId>> k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule,
                                              std::uint32_t k);

/// Visits the k-compatible tuples in the order k_compatible returns them.
void for_each_k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule, std::uint32_t k,
                           const std::function<void(std::span<const NodeId>)>& visit);

/// Number of k-compatible tuples of `rule` without enumerating them (saturates at UINT64_MAX).
std::uint64_t count_k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule, std::uint32_t k);

/// Adds a fresh depth-k node for every non-base rule and k-compatible tuple.
/// Returns the ids of the new nodes (rules in id order, tuples lexicographic).
std::vector<NodeId> inductive_step(ExecutionGraph& g, const Program& prog, std::uint32_t k);

/// As above, but only tuples accepted by `admit` become nodes.
using TupleFilter = std::function<bool(std::uint32_t rule, std::span<const NodeId> parents)>;
std::vector<NodeId> inductive_step(ExecutionGraph& g, const Program& prog, std::uint32_t k, const TupleFilter& admit);

}  // namespace ltg
