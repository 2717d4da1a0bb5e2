#include "ltg/reasoner.hpp"

#include <algorithm>
#include <chrono>

namespace ltg {

std::size_t ReasoningResult::stored_entries() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < stores.size(); ++i) n += stores.at(static_cast<NodeId>(i)).stored_count();
    return n;
}

std::size_t ReasoningResult::or_entries() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < stores.size(); ++i) n += stores.at(static_cast<NodeId>(i)).or_count();
    return n;
}

std::span<const ChildRef> ReasoningResult::entries_for(AtomId root) const {
    auto it = by_root.find(root);
    if (it == by_root.end()) return {};
    return it->second;
}

namespace {

class Reasoner {
public:
    Reasoner(const Program& prog, const ReasonerOptions& opts)
        : opts_(opts), result_(std::make_shared<const Program>(prog)) {}

    ReasoningResult run() {
        const Program& prog = *result_.program;
        std::uint32_t prev_depth = 0;
        for (std::uint32_t k = 1;; ++k) {
            if (opts_.max_depth && k > *opts_.max_depth) {
                result_.truncated = true;
                break;
            }
            auto start = std::chrono::steady_clock::now();
            RoundStats rs;
            rs.round = k;

            std::vector<NodeId> fresh;
            if (k == 1) {
                result_.graph = base_step(prog);
                for (const auto& n : result_.graph.nodes()) fresh.push_back(n.id);
            } else {
                if (opts_.skip_unjoinable) {
                    std::size_t admitted = result_.graph.size();
                    fresh = inductive_step(result_.graph, prog, k, [&](std::uint32_t r, std::span<const NodeId> t) {
                        if (!joinable(r, t)) return false;
                        if (opts_.max_nodes && ++admitted > *opts_.max_nodes) throw_node_limit(k);
                        return true;
                    });
                } else {
                    check_node_limit(k);
                    fresh = inductive_step(result_.graph, prog, k);
                }
            }
            rs.new_nodes = fresh.size();
            if (!fresh.empty()) {
                result_.stores.at(fresh.back());
                result_.rounds = k;
            }
            for (NodeId v : fresh) {
                process(v, rs);
                if (result_.stores.at(v).empty()) {
                    result_.graph.remove_node(v);
                    ++rs.removed_nodes;
                } else if (opts_.skip_unjoinable) {
                    record_masks(v);
                }
            }

            rs.live_nodes = result_.graph.live_count();
            rs.stored_entries = stored_;
            rs.allocated_entries = allocated_;
            rs.or_entries = or_stored_;
            rs.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            result_.per_round.push_back(rs);

            std::uint32_t depth = result_.graph.depth();
            if (depth == prev_depth) break;
            prev_depth = depth;
        }
        return std::move(result_);
    }

private:
    void process(NodeId v, RoundStats& rs) {
        const Program& prog = *result_.program;
        TreeGroups groups = instantiate_node(result_.graph.node(v), prog, result_.atoms, result_.stores);
        rs.candidate_trees += groups.total();

        const bool collapse_node = opts_.collapse == CollapseMode::On ||
                                   (opts_.collapse == CollapseMode::Auto && should_collapse(groups, opts_.threshold));
        NodeStore& store = result_.stores.at(v);
        RedundancyChecker checker(result_.stores);
        // Once OR entries exist, keeping a tree requires one unfolding free of repeated atoms.
        const bool strict = opts_.collapse != CollapseMode::Off;
        auto prune = [&](const auto& x) {
            if (!opts_.prune_redundant) return false;
            return strict ? !simple_.has_simple_unfolding(x) : checker.is_redundant(x);
        };

        for (std::size_t g = 0; g < groups.roots.size(); ++g) {
            auto& trees = groups.trees[g];
            if (collapse_node && trees.size() > 1) {
                const std::size_t mark = store.entries().size();
                std::vector<std::uint32_t> members;
                members.reserve(trees.size());
                for (const auto& t : trees) members.push_back(append(store, t));
                std::uint32_t or_index = collapse(store, members);
                ++allocated_;
                if (!prune(ChildRef::entry(v, or_index))) {
                    publish(store, or_index);
                    ++or_stored_;
                } else {
                    simple_.forget(v, static_cast<std::uint32_t>(mark), or_index + 1);
                    store.truncate(mark);
                }
            } else {
                for (const auto& t : trees) {
                    if (prune(t)) continue;
                    publish(store, append(store, t));
                }
            }
            check_limits();
        }
    }

    std::uint32_t append(NodeStore& store, const CandidateTree& t) {
        std::uint64_t sig = atom_signature(t.root);
        for (auto c : t.children) sig |= result_.stores.signature(c);
        ++allocated_;
        return store.append(t.root, Label::And, t.children, sig);
    }

    void publish(NodeStore& store, std::uint32_t index) {
        store.publish(index);
        result_.by_root[store.entry(index).root].push_back(ChildRef::entry(store.owner(), index));
        ++stored_;
    }

    void check_node_limit(std::uint32_t k) {
        if (!opts_.max_nodes) return;
        std::uint64_t total = result_.graph.size();
        for (const auto& r : result_.program->rules) {
            if (r.kind != RuleKind::NonBase) continue;
            std::uint64_t n = count_k_compatible(result_.graph, *result_.program, r, k);
            total = n > *opts_.max_nodes ? n : total + n;
        }
        if (total > *opts_.max_nodes) throw_node_limit(k);
    }

    [[noreturn]] void throw_node_limit(std::uint32_t k) {
        throw ResourceLimitError("resource limit exceeded: round " + std::to_string(k) + " needs more than " +
                                     std::to_string(*opts_.max_nodes) + " graph nodes",
                                 result_.per_round);
    }

    static std::uint64_t symbol_bit(SymbolId s) {
        return std::uint64_t{1} << ((std::uint64_t{s} * 0x9e3779b97f4a7c15ull) >> 58);
    }

    void record_masks(NodeId v) {
        if (masks_.size() <= v) masks_.resize(v + 1);
        auto& m = masks_[v];
        for (AtomId root : result_.stores.at(v).roots()) {
            auto args = result_.atoms.args(root);
            if (m.size() < args.size()) m.resize(args.size(), 0);
            for (std::size_t j = 0; j < args.size(); ++j) m[j] |= symbol_bit(args[j]);
        }
    }

    bool joinable(std::uint32_t r, std::span<const NodeId> parents) {
        const Rule& rule = result_.program->rules[r];
        vars_.clear();
        for (std::size_t i = 0; i < parents.size(); ++i) {
            const auto& m = masks_[parents[i]];
            const auto& args = rule.body[i].args;
            for (std::size_t j = 0; j < args.size(); ++j) {
                if (!args[j].variable) {
                    if (!(m[j] & symbol_bit(args[j].id))) return false;
                    continue;
                }
                auto it = std::find_if(vars_.begin(), vars_.end(), [&](const auto& p) { return p.first == args[j].id; });
                if (it == vars_.end()) {
                    vars_.emplace_back(args[j].id, m[j]);
                } else if (!(it->second &= m[j])) {
                    return false;
                }
            }
        }
        return true;
    }

    void check_limits() {
        if (opts_.max_entries && allocated_ > *opts_.max_entries) {
            throw ResourceLimitError("resource limit exceeded: more than " + std::to_string(*opts_.max_entries) +
                                         " derivation entries",
                                     result_.per_round);
        }
    }

    ReasonerOptions opts_;
    ReasoningResult result_;
    SimpleUnfoldingChecker simple_{result_.stores};
    std::vector<std::vector<std::uint64_t>> masks_;
    std::vector<std::pair<SymbolId, std::uint64_t>> vars_;
    std::size_t stored_ = 0;
    std::size_t allocated_ = 0;
    std::size_t or_stored_ = 0;
};

}  // namespace

ReasoningResult run_pr(const Program& normalized, ReasonerOptions opts) {
    opts.collapse = CollapseMode::Off;
    return Reasoner(normalized, opts).run();
}

ReasoningResult run_pcor(const Program& normalized, ReasonerOptions opts) {
    if (opts.collapse == CollapseMode::Off) opts.collapse = CollapseMode::Auto;
    return Reasoner(normalized, opts).run();
}

ReasoningResult reason(const Program& normalized, const ReasonerOptions& opts) {
    return opts.collapse == CollapseMode::Off ? run_pr(normalized, opts) : run_pcor(normalized, opts);
}

}  // namespace ltg
