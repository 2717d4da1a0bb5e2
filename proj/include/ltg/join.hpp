#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "ltg/atoms.hpp"
#include "ltg/program.hpp"

namespace ltg {

/// A rule body compiled for nested-loop joins over ground-atom candidate lists.
/// Variables are renumbered into dense slots; each body position probes a hash
/// index on its first argument that is already bound when the position is reached.
class RuleJoin {
public:
    explicit RuleJoin(const Rule& rule);

    std::size_t arity() const noexcept { return body_.size(); }

    /// Enumerates every assignment of one candidate per body position that is a
    /// consistent instantiation. `emit(body_atoms, slots)` is called once per
    /// instantiation, in nested-loop order over the candidate lists.
    template <typename Emit>
    void run(const AtomTable& atoms, std::span<const std::span<const AtomId>> candidates, Emit&& emit) const;

    /// Interns the head atom under the slot bindings.
    AtomId head(AtomTable& atoms, const std::vector<SymbolId>& slots) const;

private:
    static constexpr std::int32_t kConst = -1;
    struct Arg {
        std::int32_t slot = kConst;  // variable slot or kConst
        SymbolId constant = 0;
        bool binds = false;  // first occurrence of the slot
    };
    struct Position {
        std::vector<Arg> args;
        std::int32_t key = -1;  // argument index used for index lookup, -1 for scan
    };

    using Index = std::unordered_map<SymbolId, std::vector<AtomId>>;

    template <typename Emit>
    void step(const AtomTable& atoms, std::span<const std::span<const AtomId>> candidates, std::vector<Index>& indexes,
              std::size_t pos, std::vector<SymbolId>& slots, std::vector<AtomId>& chosen, Emit& emit) const;

    bool unify(const Position& p, std::span<const SymbolId> args, std::vector<SymbolId>& slots) const;

    std::vector<Position> body_;
    std::vector<Arg> head_;
    SymbolId head_pred_ = 0;
    std::size_t slot_count_ = 0;
};

template <typename Emit>
void RuleJoin::run(const AtomTable& atoms, std::span<const std::span<const AtomId>> candidates, Emit&& emit) const {
    std::vector<Index> indexes(body_.size());
    for (std::size_t i = 0; i < body_.size(); ++i) {
        if (body_[i].key < 0 || candidates[i].size() < 8) continue;
        for (AtomId a : candidates[i]) indexes[i][atoms.args(a)[body_[i].key]].push_back(a);
    }
    std::vector<SymbolId> slots(slot_count_, 0);
    std::vector<AtomId> chosen(body_.size(), 0);
    step(atoms, candidates, indexes, 0, slots, chosen, emit);
}

template <typename Emit>
void RuleJoin::step(const AtomTable& atoms, std::span<const std::span<const AtomId>> candidates,
                    std::vector<Index>& indexes, std::size_t pos, std::vector<SymbolId>& slots,
                    std::vector<AtomId>& chosen, Emit& emit) const {
    if (pos == body_.size()) {
        emit(std::span<const AtomId>(chosen), static_cast<const std::vector<SymbolId>&>(slots));
        return;
    }
    const Position& p = body_[pos];
    std::span<const AtomId> scan = candidates[pos];
    if (!indexes[pos].empty()) {
        const Arg& k = p.args[p.key];
        SymbolId value = k.slot == kConst ? k.constant : slots[k.slot];
        auto it = indexes[pos].find(value);
        if (it == indexes[pos].end()) return;
        scan = it->second;
    }
    for (AtomId a : scan) {
        if (!unify(p, atoms.args(a), slots)) continue;
        chosen[pos] = a;
        step(atoms, candidates, indexes, pos + 1, slots, chosen, emit);
    }
}

}  // namespace ltg
