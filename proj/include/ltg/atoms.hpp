#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltg/program.hpp"

namespace ltg {

using AtomId = std::uint32_t;

/// Interned ground atoms. Seeded with the program's facts, so the atom id of a
/// database fact equals its fact variable.
class AtomTable {
public:
    explicit AtomTable(const Program& prog);

    AtomId intern(SymbolId pred, std::span<const SymbolId> args);
    std::optional<AtomId> find(SymbolId pred, std::span<const SymbolId> args) const;
    std::optional<AtomId> find(const Atom& ground) const;

    SymbolId predicate(AtomId id) const { return preds_[id]; }
    std::span<const SymbolId> args(AtomId id) const {
        return {args_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
    }
    std::optional<FactVar> fact_var(AtomId id) const {
        if (id < fact_count_) return static_cast<FactVar>(id);
        return std::nullopt;
    }
    std::size_t size() const noexcept { return preds_.size(); }
    std::size_t fact_count() const noexcept { return fact_count_; }

    /// Ground atoms of a predicate in interning order.
    const std::vector<AtomId>& by_predicate(SymbolId pred) const;

    std::string render(AtomId id, const SymbolTable& symbols) const;
    Atom to_atom(AtomId id) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<SymbolId>& k) const noexcept;
    };
    std::vector<SymbolId> preds_;
    std::vector<SymbolId> args_;
    std::vector<std::size_t> offsets_{0};
    std::unordered_map<std::vector<SymbolId>, AtomId, KeyHash> ids_;
    std::vector<std::vector<AtomId>> by_pred_;
    std::size_t fact_count_ = 0;
};

/// Does `ground` match `pattern` (constants equal, repeated variables consistent)?
bool matches(const Atom& pattern, std::span<const SymbolId> ground_args);

}  // namespace ltg
