#include "ltg/execution_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

#include "ltg/error.hpp"

namespace ltg {

std::size_t ExecutionGraph::live_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const EgNode& n) { return !n.removed; }));
}

std::uint32_t ExecutionGraph::depth() const {
    std::uint32_t d = 0;
    for (const auto& n : nodes_)
        if (!n.removed) d = std::max(d, n.depth);
    return d;
}

NodeId ExecutionGraph::add_node(std::uint32_t rule, std::vector<NodeId> parents, std::uint32_t depth) {
    auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({id, rule, depth, std::move(parents), false});
    return id;
}

void ExecutionGraph::remove_node(NodeId id) {
    if (id >= nodes_.size()) throw Error(ErrorKind::UnknownNode, "unknown node " + std::to_string(id));
    if (nodes_[id].removed) throw Error(ErrorKind::Contract, "node " + std::to_string(id) + " already removed");
    nodes_[id].removed = true;
}

void ExecutionGraph::dump(std::ostream& os, const Program& prog) const {
    for (const auto& n : nodes_) {
        os << 'v' << n.id << " rule=" << n.rule << " depth=" << n.depth << " parents=[";
        for (std::size_t j = 0; j < n.parents.size(); ++j) os << (j ? "," : "") << 'v' << n.parents[j];
        os << ']' << (n.removed ? " removed" : "") << "  % " << prog.render(prog.rules[n.rule]) << '\n';
    }
}

ExecutionGraph base_step(const Program& prog) {
    ExecutionGraph g;
    for (std::uint32_t r = 0; r < prog.rules.size(); ++r)
        if (prog.rules[r].kind == RuleKind::Base) g.add_node(r, {}, 1);
    return g;
}

void for_each_k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule, std::uint32_t k,
                           const std::function<void(std::span<const NodeId>)>& visit) {
    const std::size_t n = rule.body.size();
    std::vector<std::vector<NodeId>> per_pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& node : g.nodes()) {
            if (node.removed || node.depth >= k) continue;
            if (prog.rules[node.rule].head.predicate == rule.body[i].predicate) per_pos[i].push_back(node.id);
        }
        if (per_pos[i].empty()) return;
    }

    // later_prev[i]: some position >= i can take a depth k-1 node.
    std::vector<bool> later_prev(n + 1, false);
    for (std::size_t i = n; i-- > 0;) {
        later_prev[i] = later_prev[i + 1] ||
                        std::any_of(per_pos[i].begin(), per_pos[i].end(), [&](NodeId u) { return g.node(u).depth == k - 1; });
    }

    std::vector<NodeId> tuple(n);
    auto rec = [&](auto&& self, std::size_t i, bool has_prev_depth) -> void {
        if (i == n) {
            if (has_prev_depth) visit(tuple);
            return;
        }
        for (NodeId u : per_pos[i]) {
            tuple[i] = u;
            bool hit = has_prev_depth || g.node(u).depth == k - 1;
            if (!hit && !later_prev[i + 1]) continue;
            self(self, i + 1, hit);
        }
    };
    rec(rec, 0, false);
}

std::vector<std::vector<NodeId>> k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule,
                                              std::uint32_t k) {
    std::vector<std::vector<NodeId>> out;
    for_each_k_compatible(g, prog, rule, k, [&](std::span<const NodeId> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

std::uint64_t count_k_compatible(const ExecutionGraph& g, const Program& prog, const Rule& rule, std::uint32_t k) {
    if (k < 2) return 0;
    auto mul = [](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
        return a * b;
    };
    std::uint64_t below_k = 1;
    std::uint64_t below_prev = 1;
    for (const auto& atom : rule.body) {
        std::uint64_t lt_k = 0, lt_prev = 0;
        for (const auto& n : g.nodes()) {
            if (n.removed || prog.rules[n.rule].head.predicate != atom.predicate) continue;
            if (n.depth < k) ++lt_k;
            if (n.depth + 1 < k) ++lt_prev;
        }
        below_k = mul(below_k, lt_k);
        below_prev = mul(below_prev, lt_prev);
    }
    return below_k == std::numeric_limits<std::uint64_t>::max() ? below_k : below_k - below_prev;
}

std::vector<NodeId> inductive_step(ExecutionGraph& g, const Program& prog, std::uint32_t k) {
    return inductive_step(g, prog, k, nullptr);
}

std::vector<NodeId> inductive_step(ExecutionGraph& g, const Program& prog, std::uint32_t k, const TupleFilter& admit) {
    std::vector<std::pair<std::uint32_t, std::vector<NodeId>>> pending;
    for (std::uint32_t r = 0; r < prog.rules.size(); ++r) {
        if (prog.rules[r].kind != RuleKind::NonBase) continue;
        for_each_k_compatible(g, prog, prog.rules[r], k, [&](std::span<const NodeId> t) {
            if (!admit || admit(r, t)) pending.emplace_back(r, std::vector<NodeId>(t.begin(), t.end()));
        });
    }
    std::vector<NodeId> added;
    added.reserve(pending.size());
    for (auto& [rule, parents] : pending) added.push_back(g.add_node(rule, std::move(parents), k));
    return added;
}

}  // namespace ltg
