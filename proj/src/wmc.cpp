#include "ltg/wmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <string>
#include <unordered_map>

#include "ltg/error.hpp"

namespace ltg {

VarWeights VarWeights::of(const Program& prog) {
    std::vector<double> w(prog.facts.size());
    for (const auto& f : prog.facts) w[f.var] = f.prob;
    return VarWeights(std::move(w));
}

double VarWeights::at(FactVar v) const {
    if (v >= w_.size() || std::isnan(w_[v]))
        throw Error(ErrorKind::Contract, "no weight for variable " + std::to_string(v));
    return w_[v];
}

void VarWeights::set(FactVar v, double p) {
    if (w_.size() <= v) w_.resize(v + 1, std::nan(""));
    w_[v] = p;
}

namespace {

class LruCache {
public:
    explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

    const double* get(const std::string& key) {
        auto it = index_.find(key);
        if (it == index_.end()) return nullptr;
        order_.splice(order_.begin(), order_, it->second);
        return &it->second->second;
    }

    void put(std::string key, double value) {
        if (capacity_ == 0) return;
        if (index_.size() >= capacity_) {
            index_.erase(order_.back().first);
            order_.pop_back();
        }
        order_.emplace_front(std::move(key), value);
        index_.emplace(order_.front().first, order_.begin());
    }

private:
    std::size_t capacity_;
    std::list<std::pair<std::string, double>> order_;
    std::unordered_map<std::string, std::list<std::pair<std::string, double>>::iterator> index_;
};

class Solver {
public:
    Solver(const VarWeights& w, const WmcOptions& opts) : w_(w), opts_(opts), cache_(opts.cache_capacity) {}

    // `cs` is absorption-normal and free of weight-1 variables.
    double solve(std::vector<Clause> cs) {
        if (++calls_ > opts_.max_calls)
            throw Error(ErrorKind::WmcBudget, "wmc budget exceeded after " + std::to_string(opts_.max_calls) + " calls");
        if (cs.empty()) return 0.0;
        if (cs.front().empty()) return 1.0;
        if (cs.size() == 1) {
            double p = 1.0;
            for (FactVar v : cs.front()) p *= w_.at(v);
            return p;
        }

        std::string key = encode(cs);
        if (const double* hit = cache_.get(key)) return *hit;

        double result;
        auto parts = components(cs);
        if (parts.size() > 1) {
            double none = 1.0;
            for (auto& part : parts) none *= 1.0 - solve(std::move(part));
            result = 1.0 - none;
        } else {
            cs = std::move(parts.front());
            FactVar x = branch_variable(cs);
            std::vector<Clause> pos;
            std::vector<Clause> neg;
            for (const auto& c : cs) {
                auto it = std::lower_bound(c.begin(), c.end(), x);
                if (it != c.end() && *it == x) {
                    Clause r = c;
                    r.erase(r.begin() + (it - c.begin()));
                    pos.push_back(std::move(r));
                } else {
                    pos.push_back(c);
                    neg.push_back(c);
                }
            }
            minimize(pos, std::numeric_limits<std::size_t>::max());
            double wx = w_.at(x);
            result = wx * solve(std::move(pos)) + (1.0 - wx) * solve(std::move(neg));
        }
        cache_.put(std::move(key), result);
        return result;
    }

private:
    static std::string encode(const std::vector<Clause>& cs) {
        std::string key;
        for (const auto& c : cs) {
            for (FactVar v : c) key.append(reinterpret_cast<const char*>(&v), sizeof v);
            FactVar sep = std::numeric_limits<FactVar>::max();
            key.append(reinterpret_cast<const char*>(&sep), sizeof sep);
        }
        return key;
    }

    static FactVar branch_variable(const std::vector<Clause>& cs) {
        std::unordered_map<FactVar, std::size_t> count;
        for (const auto& c : cs)
            for (FactVar v : c) ++count[v];
        FactVar best = 0;
        std::size_t best_count = 0;
        for (const auto& [v, n] : count) {
            if (n > best_count || (n == best_count && v < best)) {
                best = v;
                best_count = n;
            }
        }
        return best;
    }

    static std::vector<std::vector<Clause>> components(std::vector<Clause>& cs) {
        std::unordered_map<FactVar, std::size_t> owner;  // variable -> first clause seen
        std::vector<std::size_t> parent(cs.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (FactVar v : cs[i]) {
                auto [it, fresh] = owner.try_emplace(v, i);
                if (!fresh) parent[find(i)] = find(it->second);
            }
        }
        std::unordered_map<std::size_t, std::size_t> slot;
        std::vector<std::vector<Clause>> parts;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            auto [it, fresh] = slot.try_emplace(find(i), parts.size());
            if (fresh) parts.emplace_back();
            parts[it->second].push_back(std::move(cs[i]));
        }
        return parts;
    }

    const VarWeights& w_;
    const WmcOptions& opts_;
    LruCache cache_;
    std::size_t calls_ = 0;
};

}  // namespace

double probability(const Dnf& d, const VarWeights& w, const WmcOptions& opts) {
    std::vector<Clause> cs;
    cs.reserve(d.size());
    for (const auto& c : d.clauses()) {
        Clause r;
        for (FactVar v : c)
            if (w.at(v) < 1.0) r.push_back(v);
        cs.push_back(std::move(r));
    }
    minimize(cs, std::numeric_limits<std::size_t>::max());
    Solver solver(w, opts);
    return std::clamp(solver.solve(std::move(cs)), 0.0, 1.0);
}

double brute_force_probability(const Dnf& d, const VarWeights& w) {
    auto vars = d.variables();
    if (vars.size() > 25)
        throw Error(ErrorKind::TooManyVariables,
                    "brute force limited to 25 variables, got " + std::to_string(vars.size()));
    std::vector<std::uint32_t> masks;
    for (const auto& c : d.clauses()) {
        std::uint32_t m = 0;
        for (FactVar v : c) m |= 1u << (std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
        masks.push_back(m);
    }
    std::vector<double> p(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) p[i] = w.at(vars[i]);

    const std::size_t n = vars.size();
    double total = 0.0;
    auto rec = [&](auto&& self, std::size_t i, std::uint32_t world, double weight) -> void {
        if (weight == 0.0) return;
        if (i == n) {
            for (auto m : masks)
                if ((world & m) == m) {
                    total += weight;
                    return;
                }
            return;
        }
        self(self, i + 1, world | (1u << i), weight * p[i]);
        self(self, i + 1, world, weight * (1.0 - p[i]));
    };
    rec(rec, 0, 0, 1.0);
    return total;
}

}  // namespace ltg
