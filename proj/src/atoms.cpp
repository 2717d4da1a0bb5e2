#include "ltg/atoms.hpp"

#include <map>

#include "ltg/join.hpp"

namespace ltg {

std::size_t AtomTable::KeyHash::operator()(const std::vector<SymbolId>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

AtomTable::AtomTable(const Program& prog) {
    std::vector<SymbolId> args;
    for (const auto& f : prog.facts) {
        args.clear();
        for (const auto& t : f.fact.args) args.push_back(t.id);
        intern(f.fact.predicate, args);
    }
    fact_count_ = preds_.size();
}

AtomId AtomTable::intern(SymbolId pred, std::span<const SymbolId> args) {
    std::vector<SymbolId> key;
    key.reserve(args.size() + 1);
    key.push_back(pred);
    key.insert(key.end(), args.begin(), args.end());
    auto [it, fresh] = ids_.try_emplace(std::move(key), static_cast<AtomId>(preds_.size()));
    if (!fresh) return it->second;
    preds_.push_back(pred);
    args_.insert(args_.end(), args.begin(), args.end());
    offsets_.push_back(args_.size());
    if (by_pred_.size() <= pred) by_pred_.resize(pred + 1);
    by_pred_[pred].push_back(it->second);
    return it->second;
}

std::optional<AtomId> AtomTable::find(SymbolId pred, std::span<const SymbolId> args) const {
    std::vector<SymbolId> key;
    key.push_back(pred);
    key.insert(key.end(), args.begin(), args.end());
    auto it = ids_.find(key);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<AtomId> AtomTable::find(const Atom& ground) const {
    std::vector<SymbolId> args;
    for (const auto& t : ground.args) {
        if (t.variable) return std::nullopt;
        args.push_back(t.id);
    }
    return find(ground.predicate, args);
}

const std::vector<AtomId>& AtomTable::by_predicate(SymbolId pred) const {
    static const std::vector<AtomId> empty;
    return pred < by_pred_.size() ? by_pred_[pred] : empty;
}

std::string AtomTable::render(AtomId id, const SymbolTable& symbols) const {
    std::string out = symbols.predicate_name(preds_[id]);
    auto a = args(id);
    if (a.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += symbols.constant_name(a[i]);
    }
    return out + ')';
}

Atom AtomTable::to_atom(AtomId id) const {
    Atom atom{preds_[id], {}};
    for (auto c : args(id)) atom.args.push_back(Term::constant(c));
    return atom;
}

bool matches(const Atom& pattern, std::span<const SymbolId> ground_args) {
    if (pattern.args.size() != ground_args.size()) return false;
    std::map<SymbolId, SymbolId> seen;
    for (std::size_t i = 0; i < ground_args.size(); ++i) {
        const auto& t = pattern.args[i];
        if (!t.variable) {
            if (t.id != ground_args[i]) return false;
            continue;
        }
        auto [it, fresh] = seen.emplace(t.id, ground_args[i]);
        if (!fresh && it->second != ground_args[i]) return false;
    }
    return true;
}

RuleJoin::RuleJoin(const Rule& rule) : head_pred_(rule.head.predicate) {
    std::map<SymbolId, std::int32_t> slot_of;
    auto compile = [&](const Atom& atom, bool in_body) {
        Position p;
        const auto bound_before = static_cast<std::int32_t>(slot_of.size());
        for (std::size_t i = 0; i < atom.args.size(); ++i) {
            const auto& t = atom.args[i];
            Arg arg;
            if (!t.variable) {
                arg.constant = t.id;
                if (p.key < 0) p.key = static_cast<std::int32_t>(i);
            } else if (auto it = slot_of.find(t.id); it != slot_of.end()) {
                arg.slot = it->second;
                if (p.key < 0 && arg.slot < bound_before) p.key = static_cast<std::int32_t>(i);
            } else {
                // Heads only reference body variables (rules are safe).
                arg.slot = static_cast<std::int32_t>(slot_of.size());
                arg.binds = in_body;
                slot_of.emplace(t.id, arg.slot);
            }
            p.args.push_back(arg);
        }
        return p;
    };
    for (const auto& b : rule.body) {
        // Repeated variables within one atom: only the first occurrence binds.
        body_.push_back(compile(b, true));
    }
    slot_count_ = slot_of.size();
    head_ = compile(rule.head, false).args;
}

bool RuleJoin::unify(const Position& p, std::span<const SymbolId> args, std::vector<SymbolId>& slots) const {
    for (std::size_t i = 0; i < p.args.size(); ++i) {
        const Arg& a = p.args[i];
        if (a.slot == kConst) {
            if (a.constant != args[i]) return false;
        } else if (a.binds) {
            slots[a.slot] = args[i];
        } else if (slots[a.slot] != args[i]) {
            return false;
        }
    }
    return true;
}

AtomId RuleJoin::head(AtomTable& atoms, const std::vector<SymbolId>& slots) const {
    std::vector<SymbolId> args;
    args.reserve(head_.size());
    for (const auto& a : head_) args.push_back(a.slot == kConst ? a.constant : slots[a.slot]);
    return atoms.intern(head_pred_, args);
}

}  // namespace ltg
