#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltg/derivation_store.hpp"
#include "ltg/dnf.hpp"
#include "ltg/reasoner.hpp"

namespace ltg {

/// Lineage formulas of stored entries, memoized per entry.
/// Leaf -> {{var}}, AND -> product of the children, OR -> union of the children.
class LineageBuilder {
public:
    explicit LineageBuilder(const StoreSet& stores, std::size_t clause_cap = kDefaultClauseCap)
        : stores_(stores), cap_(clause_cap) {}

    const Dnf& phi(ChildRef ref);
    std::size_t cap() const noexcept { return cap_; }

private:
    const StoreSet& stores_;
    std::size_t cap_;
    std::unordered_map<std::uint64_t, Dnf> cache_;
};

struct Answer {
    AtomId atom = 0;
    std::string fact;
    Dnf lineage;
};

/// Lineage of one ground atom: its own variable when it is a database fact,
/// disjoined with phi of every stored tree rooted at it.
Dnf atom_lineage(const ReasoningResult& result, LineageBuilder& builder, AtomId atom);

/// Every ground instance of `query` that is a database fact or the root of a
/// stored tree, sorted by fact text. Throws ErrorKind::UnknownPredicate for a
/// predicate outside the program.
std::vector<Answer> collect_lineage(const ReasoningResult& result, const Atom& query,
                                    std::size_t clause_cap = kDefaultClauseCap);

/// Names fact variables by the fact text of `prog`.
std::function<std::string(FactVar)> fact_namer(const Program& prog);

}  // namespace ltg
