#include "ltg/dnf.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "ltg/error.hpp"

namespace ltg {

void minimize(std::vector<Clause>& clauses, std::size_t cap) {
    for (auto& c : clauses) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(clauses.begin(), clauses.end(), [](const Clause& a, const Clause& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    if (!clauses.empty() && clauses.front().empty()) {
        clauses.resize(1);
        return;
    }

    // Kept clauses are never larger than the candidate, so a kept clause absorbs the
    // candidate iff every one of its variables occurs in it. Counted via occurrence lists.
    std::vector<Clause> kept;
    std::unordered_map<FactVar, std::vector<std::uint32_t>> occ;
    std::vector<std::uint32_t> hits;
    std::vector<std::uint32_t> touched;
    for (auto& c : clauses) {
        bool absorbed = false;
        for (FactVar v : c) {
            auto it = occ.find(v);
            if (it == occ.end()) continue;
            for (auto k : it->second) {
                if (hits[k]++ == 0) touched.push_back(k);
                if (hits[k] == kept[k].size()) {
                    absorbed = true;
                    break;
                }
            }
            if (absorbed) break;
        }
        for (auto k : touched) hits[k] = 0;
        touched.clear();
        if (absorbed) continue;
        auto id = static_cast<std::uint32_t>(kept.size());
        for (FactVar v : c) occ[v].push_back(id);
        kept.push_back(std::move(c));
        hits.push_back(0);
        if (kept.size() > cap) {
            throw Error(ErrorKind::LineageTooLarge,
                        "lineage too large: more than " + std::to_string(cap) + " clauses");
        }
    }
    std::sort(kept.begin(), kept.end());
    clauses = std::move(kept);
}

Dnf Dnf::truth() {
    Dnf d;
    d.clauses_.emplace_back();
    return d;
}

Dnf Dnf::literal(FactVar var) {
    Dnf d;
    d.clauses_.push_back({var});
    return d;
}

Dnf Dnf::from_clauses(std::vector<Clause> clauses, std::size_t cap) {
    minimize(clauses, cap);
    Dnf d;
    d.clauses_ = std::move(clauses);
    return d;
}

std::vector<FactVar> Dnf::variables() const {
    std::vector<FactVar> vars;
    for (const auto& c : clauses_) vars.insert(vars.end(), c.begin(), c.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

bool Dnf::evaluate(const std::function<bool(FactVar)>& value) const {
    return std::any_of(clauses_.begin(), clauses_.end(),
                       [&](const Clause& c) { return std::all_of(c.begin(), c.end(), value); });
}

std::vector<std::vector<std::string>> Dnf::named(const std::function<std::string(FactVar)>& name) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& c : clauses_) {
        std::vector<std::string> lits;
        for (FactVar v : c) lits.push_back(name(v));
        std::sort(lits.begin(), lits.end());
        out.push_back(std::move(lits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Dnf::to_string(const std::function<std::string(FactVar)>& name) const {
    if (is_false()) return "false";
    if (is_true()) return "true";
    std::string s;
    for (const auto& clause : named(name)) {
        if (!s.empty()) s += " | ";
        for (std::size_t i = 0; i < clause.size(); ++i) s += (i ? " & " : "") + clause[i];
    }
    return s;
}

Dnf disjoin(const Dnf& a, const Dnf& b, std::size_t cap) {
    if (a.is_false()) return b;
    if (b.is_false()) return a;
    std::vector<Clause> all = a.clauses();
    all.insert(all.end(), b.clauses().begin(), b.clauses().end());
    return Dnf::from_clauses(std::move(all), cap);
}

Dnf conjoin(const Dnf& a, const Dnf& b, std::size_t cap) {
    if (a.is_false() || b.is_false()) return {};
    if (a.is_true()) return b;
    if (b.is_true()) return a;
    // The raw product is absorbed afterwards; bound it so pathological inputs fail fast.
    const double raw = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (raw > 16.0 * static_cast<double>(cap)) {
        throw Error(ErrorKind::LineageTooLarge, "lineage too large: conjunction of " + std::to_string(a.size()) +
                                                    " and " + std::to_string(b.size()) + " clauses");
    }
    std::vector<Clause> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.clauses()) {
        for (const auto& y : b.clauses()) {
            Clause c;
            c.reserve(x.size() + y.size());
            std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
            out.push_back(std::move(c));
        }
    }
    return Dnf::from_clauses(std::move(out), cap);
}

}  // namespace ltg
