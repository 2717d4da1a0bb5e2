#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "ltg/atoms.hpp"
#include "ltg/execution_graph.hpp"
#include "ltg/program.hpp"

namespace ltg {

/// Either a database fact (leaf) or a derivation entry stored in some node.
struct ChildRef {
    static constexpr NodeId kLeaf = std::numeric_limits<NodeId>::max();

    NodeId node = kLeaf;
    std::uint32_t index = 0;  // entry index, or the fact variable for leaves

    static ChildRef leaf(FactVar var) { return {kLeaf, var}; }
    static ChildRef entry(NodeId node, std::uint32_t index) { return {node, index}; }
    bool is_leaf() const noexcept { return node == kLeaf; }
    std::uint64_t key() const noexcept { return (std::uint64_t{node} << 32) | index; }
    friend bool operator==(const ChildRef&, const ChildRef&) = default;
};

enum class Label : std::uint8_t { And, Or };

/// One derivation-tree node stored with structure sharing: its root fact plus
/// references to the roots of its subtrees.
struct DerivationEntry {
    AtomId root = 0;
    Label label = Label::And;
    NodeId home = 0;
    std::uint32_t child_begin = 0;
    std::uint32_t child_count = 0;
    /// 64-bit Bloom signature of every atom that may occur in the tree, root included.
    std::uint64_t signature = 0;
};

/// A derivation tree produced by rule instantiation, before it is stored.
struct CandidateTree {
    AtomId root = 0;
    std::vector<ChildRef> children;
};

/// Candidate trees of one node grouped by root fact, roots in first-seen order.
struct TreeGroups {
    std::vector<AtomId> roots;
    std::vector<std::vector<CandidateTree>> trees;  // parallel to roots

    std::size_t total() const;
    bool empty() const noexcept { return roots.empty(); }
};

std::uint64_t atom_signature(AtomId atom);

/// Entries of one execution-graph node. All entries (including OR constituents)
/// live in `entries`; only stored derivation trees are indexed by root.
class NodeStore {
public:
    explicit NodeStore(NodeId owner = 0) : owner_(owner) {}

    NodeId owner() const noexcept { return owner_; }
    const std::vector<DerivationEntry>& entries() const noexcept { return entries_; }
    const DerivationEntry& entry(std::uint32_t i) const { return entries_.at(i); }
    std::span<const ChildRef> children(std::uint32_t i) const {
        const auto& e = entries_[i];
        return {pool_.data() + e.child_begin, e.child_count};
    }

    /// Appends an entry without publishing it under its root.
    std::uint32_t append(AtomId root, Label label, std::span<const ChildRef> children, std::uint64_t signature);
    /// Indexes an appended entry under its root (adds it to T(v,F)).
    void publish(std::uint32_t index);
    /// Drops unpublished entries appended after `size`.
    void truncate(std::size_t size);

    const std::vector<AtomId>& roots() const noexcept { return roots_; }
    std::span<const std::uint32_t> stored(AtomId root) const;
    std::size_t stored_count() const noexcept { return stored_count_; }
    std::size_t or_count() const;
    bool empty() const noexcept { return stored_count_ == 0; }

private:
    NodeId owner_;
    std::vector<DerivationEntry> entries_;
    std::vector<ChildRef> pool_;
    std::vector<AtomId> roots_;
    std::vector<std::vector<std::uint32_t>> by_root_;
    std::unordered_map<AtomId, std::size_t> root_slot_;
    std::size_t stored_count_ = 0;
};

/// The stores of every execution-graph node, indexed by node id.
class StoreSet {
public:
    NodeStore& at(NodeId id);
    const NodeStore& at(NodeId id) const { return stores_.at(id); }
    std::size_t size() const noexcept { return stores_.size(); }

    const DerivationEntry& entry(ChildRef ref) const { return stores_[ref.node].entry(ref.index); }
    std::span<const ChildRef> children(ChildRef ref) const { return stores_[ref.node].children(ref.index); }
    /// Root atom of an entry, or the fact atom for a leaf.
    AtomId root(ChildRef ref) const { return ref.is_leaf() ? static_cast<AtomId>(ref.index) : entry(ref).root; }
    std::uint64_t signature(ChildRef ref) const {
        return ref.is_leaf() ? atom_signature(ref.index) : entry(ref).signature;
    }

    std::size_t total_entries() const;

private:
    std::vector<NodeStore> stores_;
};

/// trees(alpha, v, F) for every alpha. Source nodes join the rule body against the
/// database; other nodes join body atom i against the stored roots of parent i and
/// emit one tree per combination of the parents' matching entries.
TreeGroups instantiate_node(const EgNode& node, const Program& prog, AtomTable& atoms, const StoreSet& stores);

/// Redundancy of derivation trees w.r.t. their root, decided without enumerating unfoldings.
///
/// avoid(x) holds when some unfolding of x does not mention the target atom:
/// leaves always avoid it, an AND entry avoids it when its root differs and every
/// child avoids it, an OR entry when its root differs and some child avoids it.
/// A tree rooted at alpha is non-redundant iff some unfolding mentions alpha only
/// at the root. Memoized per (entry, target).
class RedundancyChecker {
public:
    explicit RedundancyChecker(const StoreSet& stores) : stores_(stores) {}

    bool is_redundant(ChildRef entry);
    bool is_redundant(const CandidateTree& tree);

private:
    bool avoids(ChildRef x, AtomId target, std::uint64_t target_bit);
    bool non_redundant(ChildRef x, AtomId target, std::uint64_t target_bit);

    const StoreSet& stores_;
    AtomId memo_target_ = 0;
    bool memo_valid_ = false;
    std::unordered_map<std::uint64_t, bool> memo_;
};

/// Decides whether some unfolding of an entry repeats no atom along any root-to-leaf path.
/// Results stay cached across calls; call forget() after truncating a store.
class SimpleUnfoldingChecker {
public:
    explicit SimpleUnfoldingChecker(const StoreSet& stores) : stores_(stores) {}

    bool has_simple_unfolding(ChildRef entry);
    bool has_simple_unfolding(const CandidateTree& tree);
    void forget(NodeId node, std::uint32_t from, std::uint32_t to);

private:
    bool alone(ChildRef x);
    bool clean(ChildRef x, std::vector<AtomId>& path, std::uint64_t path_sig);

    const StoreSet& stores_;
    std::unordered_map<std::uint64_t, bool> alone_;
    std::map<std::pair<std::uint64_t, std::vector<AtomId>>, bool> memo_;
};

inline bool is_redundant(const StoreSet& stores, ChildRef entry) { return RedundancyChecker(stores).is_redundant(entry); }

/// Appends an OR entry over the given entries of `store` (all with the same root).
/// Throws ErrorKind::Contract when fewer than two entries are given or roots differ.
std::uint32_t collapse(NodeStore& store, std::span<const std::uint32_t> entries);

/// Average number of trees per root is at least `threshold`.
bool should_collapse(const TreeGroups& groups, double threshold);
bool should_collapse(std::span<const std::size_t> group_sizes, double threshold);

/// A fully materialized AND-only derivation tree.
struct Tree {
    AtomId atom = 0;
    bool leaf = false;
    std::vector<std::shared_ptr<const Tree>> children;

    /// Occurrences of `atom` anywhere in the tree, leaves included.
    std::size_t count(AtomId a) const;
    /// Fact variables at the leaves.
    void leaves(std::vector<FactVar>& out) const;
};

/// Enumerates unfold(entry) lazily: an AND-only tree is its own unfolding, an OR
/// entry yields its children's unfoldings in order, and an AND entry over OR-bearing
/// children yields the Cartesian product of its children's unfoldings. Enumeration
/// stops as soon as `visit` returns false; the return value is false iff it stopped early.
bool for_each_unfolding(const StoreSet& stores, ChildRef entry, const std::function<bool(const Tree&)>& visit);

/// Materializes at most `limit` unfoldings.
std::vector<Tree> unfold(const StoreSet& stores, ChildRef entry, std::size_t limit = std::numeric_limits<std::size_t>::max());

}  // namespace ltg
