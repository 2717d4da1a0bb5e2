#include "ltg/derivation_store.hpp"

#include <algorithm>

#include "ltg/error.hpp"
#include "ltg/join.hpp"

namespace ltg {

std::size_t TreeGroups::total() const {
    std::size_t n = 0;
    for (const auto& t : trees) n += t.size();
    return n;
}

std::uint64_t atom_signature(AtomId atom) {
    std::uint64_t h = (std::uint64_t{atom} + 1) * 0x9e3779b97f4a7c15ull;
    return std::uint64_t{1} << (h >> 58);
}

std::uint32_t NodeStore::append(AtomId root, Label label, std::span<const ChildRef> children, std::uint64_t signature) {
    auto begin = static_cast<std::uint32_t>(pool_.size());
    pool_.insert(pool_.end(), children.begin(), children.end());
    entries_.push_back({root, label, owner_, begin, static_cast<std::uint32_t>(children.size()), signature});
    return static_cast<std::uint32_t>(entries_.size() - 1);
}

void NodeStore::publish(std::uint32_t index) {
    AtomId root = entries_.at(index).root;
    auto [it, fresh] = root_slot_.try_emplace(root, roots_.size());
    if (fresh) {
        roots_.push_back(root);
        by_root_.emplace_back();
    }
    by_root_[it->second].push_back(index);
    ++stored_count_;
}

void NodeStore::truncate(std::size_t size) {
    if (size >= entries_.size()) return;
    pool_.resize(entries_[size].child_begin);
    entries_.resize(size);
}

std::span<const std::uint32_t> NodeStore::stored(AtomId root) const {
    auto it = root_slot_.find(root);
    if (it == root_slot_.end()) return {};
    return by_root_[it->second];
}

std::size_t NodeStore::or_count() const {
    std::size_t n = 0;
    for (const auto& group : by_root_)
        for (auto i : group)
            if (entries_[i].label == Label::Or) ++n;
    return n;
}

NodeStore& StoreSet::at(NodeId id) {
    while (stores_.size() <= id) stores_.emplace_back(static_cast<NodeId>(stores_.size()));
    return stores_[id];
}

std::size_t StoreSet::total_entries() const {
    std::size_t n = 0;
    for (const auto& s : stores_) n += s.entries().size();
    return n;
}

TreeGroups instantiate_node(const EgNode& node, const Program& prog, AtomTable& atoms, const StoreSet& stores) {
    const Rule& rule = prog.rules[node.rule];
    RuleJoin join(rule);
    const std::size_t n = rule.body.size();

    std::vector<std::vector<AtomId>> cand(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (node.parents.empty()) {
            for (AtomId a : atoms.by_predicate(rule.body[i].predicate))
                if (atoms.fact_var(a)) cand[i].push_back(a);
        } else {
            cand[i] = stores.at(node.parents[i]).roots();
        }
    }
    std::vector<std::span<const AtomId>> spans(cand.begin(), cand.end());

    // Join first, intern heads afterwards: interning may grow the atom table.
    std::vector<std::vector<SymbolId>> heads;
    std::vector<AtomId> bodies;
    join.run(atoms, spans, [&](std::span<const AtomId> body, const std::vector<SymbolId>& slots) {
        heads.push_back(slots);
        bodies.insert(bodies.end(), body.begin(), body.end());
    });

    TreeGroups out;
    std::unordered_map<AtomId, std::size_t> slot_of;
    std::vector<ChildRef> children(n);
    for (std::size_t h = 0; h < heads.size(); ++h) {
        AtomId root = join.head(atoms, heads[h]);
        auto [it, fresh] = slot_of.try_emplace(root, out.roots.size());
        if (fresh) {
            out.roots.push_back(root);
            out.trees.emplace_back();
        }
        auto& group = out.trees[it->second];
        const AtomId* body = bodies.data() + h * n;
        if (node.parents.empty()) {
            CandidateTree t{root, {}};
            for (std::size_t i = 0; i < n; ++i) t.children.push_back(ChildRef::leaf(*atoms.fact_var(body[i])));
            group.push_back(std::move(t));
            continue;
        }
        // One tree per combination of the parents' entries for the chosen body facts.
        std::vector<std::span<const std::uint32_t>> choices(n);
        for (std::size_t i = 0; i < n; ++i) choices[i] = stores.at(node.parents[i]).stored(body[i]);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == n) {
                group.push_back({root, children});
                return;
            }
            for (auto idx : choices[i]) {
                children[i] = ChildRef::entry(node.parents[i], idx);
                self(self, i + 1);
            }
        };
        rec(rec, 0);
    }
    return out;
}

bool RedundancyChecker::avoids(ChildRef x, AtomId target, std::uint64_t target_bit) {
    if (!(stores_.signature(x) & target_bit)) return true;
    if (x.is_leaf()) return x.index != target;
    auto key = x.key();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto& e = stores_.entry(x);
    bool result;
    if (e.root == target) {
        result = false;
    } else if (e.label == Label::And) {
        result = true;
        for (auto c : stores_.children(x))
            if (!avoids(c, target, target_bit)) {
                result = false;
                break;
            }
    } else {
        result = false;
        for (auto c : stores_.children(x))
            if (avoids(c, target, target_bit)) {
                result = true;
                break;
            }
    }
    memo_.emplace(key, result);
    return result;
}

bool RedundancyChecker::non_redundant(ChildRef x, AtomId target, std::uint64_t target_bit) {
    if (x.is_leaf()) return true;
    const auto& e = stores_.entry(x);
    auto kids = stores_.children(x);
    if (e.label == Label::Or) {
        return std::any_of(kids.begin(), kids.end(), [&](ChildRef c) { return non_redundant(c, target, target_bit); });
    }
    return std::all_of(kids.begin(), kids.end(), [&](ChildRef c) { return avoids(c, target, target_bit); });
}

bool RedundancyChecker::is_redundant(ChildRef entry) {
    AtomId target = stores_.root(entry);
    if (!memo_valid_ || memo_target_ != target) {
        memo_.clear();
        memo_target_ = target;
        memo_valid_ = true;
    }
    return !non_redundant(entry, target, atom_signature(target));
}

bool RedundancyChecker::is_redundant(const CandidateTree& tree) {
    if (!memo_valid_ || memo_target_ != tree.root) {
        memo_.clear();
        memo_target_ = tree.root;
        memo_valid_ = true;
    }
    auto bit = atom_signature(tree.root);
    return !std::all_of(tree.children.begin(), tree.children.end(),
                        [&](ChildRef c) { return avoids(c, tree.root, bit); });
}

bool SimpleUnfoldingChecker::alone(ChildRef x) {
    if (x.is_leaf()) return true;
    if (auto it = alone_.find(x.key()); it != alone_.end()) return it->second;
    const auto& e = stores_.entry(x);
    bool result;
    if (e.label == Label::Or) {
        result = false;
        for (auto c : stores_.children(x))
            if (alone(c)) {
                result = true;
                break;
            }
    } else {
        std::vector<AtomId> path{e.root};
        result = true;
        for (auto c : stores_.children(x))
            if (!clean(c, path, atom_signature(e.root))) {
                result = false;
                break;
            }
    }
    alone_.emplace(x.key(), result);
    return result;
}

bool SimpleUnfoldingChecker::clean(ChildRef x, std::vector<AtomId>& path, std::uint64_t path_sig) {
    if (x.is_leaf()) return true;
    const std::uint64_t sig = stores_.signature(x);
    if (!(sig & path_sig)) return alone(x);
    std::vector<AtomId> relevant;
    for (AtomId a : path)
        if (atom_signature(a) & sig) relevant.push_back(a);
    if (relevant.empty()) return alone(x);
    std::sort(relevant.begin(), relevant.end());
    auto key = std::make_pair(x.key(), std::move(relevant));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto& e = stores_.entry(x);
    bool result = false;
    if (std::find(path.begin(), path.end(), e.root) != path.end()) {
        result = false;
    } else if (e.label == Label::Or) {
        for (auto c : stores_.children(x))
            if (clean(c, path, path_sig)) {
                result = true;
                break;
            }
    } else {
        path.push_back(e.root);
        result = true;
        for (auto c : stores_.children(x))
            if (!clean(c, path, path_sig | atom_signature(e.root))) {
                result = false;
                break;
            }
        path.pop_back();
    }
    memo_.emplace(std::move(key), result);
    return result;
}

bool SimpleUnfoldingChecker::has_simple_unfolding(ChildRef entry) { return alone(entry); }

bool SimpleUnfoldingChecker::has_simple_unfolding(const CandidateTree& tree) {
    std::vector<AtomId> path{tree.root};
    for (auto c : tree.children)
        if (!clean(c, path, atom_signature(tree.root))) return false;
    return true;
}

void SimpleUnfoldingChecker::forget(NodeId node, std::uint32_t from, std::uint32_t to) {
    for (std::uint32_t i = from; i < to; ++i) alone_.erase(ChildRef::entry(node, i).key());
    memo_.clear();
}

std::uint32_t collapse(NodeStore& store, std::span<const std::uint32_t> entries) {
    if (entries.size() <= 1) throw Error(ErrorKind::Contract, "collapse needs at least two derivation trees");
    AtomId root = store.entry(entries[0]).root;
    std::uint64_t sig = 0;
    std::vector<ChildRef> kids;
    kids.reserve(entries.size());
    for (auto i : entries) {
        const auto& e = store.entry(i);
        if (e.root != root) throw Error(ErrorKind::Contract, "collapse over trees with different roots");
        sig |= e.signature;
        kids.push_back(ChildRef::entry(store.owner(), i));
    }
    return store.append(root, Label::Or, kids, sig);
}

bool should_collapse(std::span<const std::size_t> group_sizes, double threshold) {
    if (group_sizes.empty()) return false;
    std::size_t total = 0;
    for (auto s : group_sizes) total += s;
    return static_cast<double>(total) >= threshold * static_cast<double>(group_sizes.size());
}

bool should_collapse(const TreeGroups& groups, double threshold) {
    std::vector<std::size_t> sizes;
    for (const auto& t : groups.trees) sizes.push_back(t.size());
    return should_collapse(sizes, threshold);
}

std::size_t Tree::count(AtomId a) const {
    std::size_t n = (atom == a) ? 1 : 0;
    for (const auto& c : children) n += c->count(a);
    return n;
}

void Tree::leaves(std::vector<FactVar>& out) const {
    if (leaf) out.push_back(atom);
    for (const auto& c : children) c->leaves(out);
}

namespace {

using TreePtr = std::shared_ptr<const Tree>;
using Visit = std::function<bool(const TreePtr&)>;

bool enumerate(const StoreSet& stores, ChildRef x, const Visit& visit) {
    if (x.is_leaf()) return visit(std::make_shared<const Tree>(Tree{x.index, true, {}}));
    const auto& e = stores.entry(x);
    auto kids = stores.children(x);
    if (e.label == Label::Or) {
        for (auto c : kids)
            if (!enumerate(stores, c, visit)) return false;
        return true;
    }
    std::vector<TreePtr> acc;
    acc.reserve(kids.size());
    std::function<bool(std::size_t)> product = [&](std::size_t i) -> bool {
        if (i == kids.size()) return visit(std::make_shared<const Tree>(Tree{e.root, false, acc}));
        return enumerate(stores, kids[i], [&](const TreePtr& t) {
            acc.push_back(t);
            bool go_on = product(i + 1);
            acc.pop_back();
            return go_on;
        });
    };
    return product(0);
}

}  // namespace

bool for_each_unfolding(const StoreSet& stores, ChildRef entry, const std::function<bool(const Tree&)>& visit) {
    return enumerate(stores, entry, [&](const TreePtr& t) { return visit(*t); });
}

std::vector<Tree> unfold(const StoreSet& stores, ChildRef entry, std::size_t limit) {
    std::vector<Tree> out;
    if (limit == 0) return out;
    for_each_unfolding(stores, entry, [&](const Tree& t) {
        out.push_back(t);
        return out.size() < limit;
    });
    return out;
}

}  // namespace ltg
