#include "ltg/lineage.hpp"

#include <algorithm>
#include <memory>

#include "ltg/error.hpp"

namespace ltg {

const Dnf& LineageBuilder::phi(ChildRef ref) {
    if (auto it = cache_.find(ref.key()); it != cache_.end()) return it->second;
    Dnf out;
    if (ref.is_leaf()) {
        out = Dnf::literal(ref.index);
    } else if (stores_.entry(ref).label == Label::Or) {
        std::vector<Clause> all;
        for (ChildRef c : stores_.children(ref)) {
            const auto& cs = phi(c).clauses();
            all.insert(all.end(), cs.begin(), cs.end());
        }
        out = Dnf::from_clauses(std::move(all), cap_);
    } else {
        out = Dnf::truth();
        for (ChildRef c : stores_.children(ref)) out = conjoin(out, phi(c), cap_);
    }
    return cache_.emplace(ref.key(), std::move(out)).first->second;
}

Dnf atom_lineage(const ReasoningResult& result, LineageBuilder& builder, AtomId atom) {
    std::vector<Clause> all;
    if (auto var = result.atoms.fact_var(atom)) all.push_back({*var});
    for (ChildRef e : result.entries_for(atom)) {
        const auto& cs = builder.phi(e).clauses();
        all.insert(all.end(), cs.begin(), cs.end());
    }
    return Dnf::from_clauses(std::move(all), builder.cap());
}

std::vector<Answer> collect_lineage(const ReasoningResult& result, const Atom& query, std::size_t clause_cap) {
    const Program& prog = *result.program;
    if (query.predicate >= prog.symbols.predicate_count())
        throw Error(ErrorKind::UnknownPredicate, "unknown predicate in query");
    if (query.args.size() != prog.symbols.arity(query.predicate))
        throw Error(ErrorKind::Arity, "query arity does not match " + prog.symbols.predicate_name(query.predicate));

    LineageBuilder builder(result.stores, clause_cap);
    std::vector<Answer> out;
    for (AtomId a : result.atoms.by_predicate(query.predicate)) {
        if (!matches(query, result.atoms.args(a))) continue;
        if (!result.atoms.fact_var(a) && result.entries_for(a).empty()) continue;
        out.push_back({a, result.atoms.render(a, prog.symbols), atom_lineage(result, builder, a)});
    }
    std::sort(out.begin(), out.end(), [](const Answer& x, const Answer& y) { return x.fact < y.fact; });
    return out;
}

std::unordered_map<AtomId, Dnf> round_bound_snapshot(const ReasoningResult& result, std::uint32_t k,
                                                     std::size_t clause_cap) {
    LineageBuilder builder(result.stores, clause_cap);
    std::unordered_map<AtomId, std::vector<Clause>> gathered;
    for (const auto& node : result.graph.nodes()) {
        if (node.removed || node.depth > k) continue;
        const NodeStore& store = result.stores.at(node.id);
        for (AtomId root : store.roots()) {
            auto& acc = gathered[root];
            for (std::uint32_t i : store.stored(root)) {
                const auto& cs = builder.phi(ChildRef::entry(node.id, i)).clauses();
                acc.insert(acc.end(), cs.begin(), cs.end());
            }
        }
    }
    std::unordered_map<AtomId, Dnf> out;
    for (auto& [root, cs] : gathered) out.emplace(root, Dnf::from_clauses(std::move(cs), clause_cap));
    return out;
}

std::function<std::string(FactVar)> fact_namer(const Program& prog) {
    auto names = std::make_shared<std::vector<std::string>>();
    names->reserve(prog.facts.size());
    for (const auto& f : prog.facts) names->push_back(prog.render(f.fact));
    return [names](FactVar v) { return v < names->size() ? (*names)[v] : "#" + std::to_string(v); };
}

}  // namespace ltg
