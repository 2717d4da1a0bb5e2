#include "ltg/tcp_oracle.hpp"

#include <algorithm>
#include <map>

#include "ltg/equivalence.hpp"
#include "ltg/join.hpp"

namespace ltg {

bool TcpInstance::any_updated() const {
    return std::any_of(updated.begin(), updated.end(), [](char c) { return c != 0; });
}

TcpInstance tcp_initial(const Program& prog, std::uint64_t seed) {
    TcpInstance inst(std::make_shared<const Program>(prog));
    inst.seed = seed;
    const std::size_t n = inst.atoms.size();
    inst.lambda.resize(n);
    inst.present.assign(n, 1);
    inst.updated.assign(n, 1);
    for (const auto& f : prog.facts) inst.lambda[f.var] = Dnf::literal(f.var);
    return inst;
}

TcpInstance tcp_step(const TcpInstance& inst, TcpMode mode, std::size_t clause_cap) {
    TcpInstance next = inst;
    next.round = inst.round + 1;
    const Program& prog = *inst.program;

    std::map<AtomId, std::vector<Clause>> derived;
    for (const auto& rule : prog.rules) {
        RuleJoin join(rule);
        const std::size_t n = rule.body.size();
        std::vector<std::vector<AtomId>> known(n), fresh(n), stale(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (AtomId a : inst.atoms.by_predicate(rule.body[i].predicate)) {
                if (!inst.known(a)) continue;
                known[i].push_back(a);
                (inst.updated[a] ? fresh : stale)[i].push_back(a);
            }
        }

        auto emit = [&](std::span<const AtomId> body, const std::vector<SymbolId>& slots) {
            ++next.instantiations;
            Dnf conj = Dnf::truth();
            for (AtomId a : body) conj = conjoin(conj, inst.lambda[a], clause_cap);
            AtomId head = join.head(next.atoms, slots);
            auto& out = derived[head];
            out.insert(out.end(), conj.clauses().begin(), conj.clauses().end());
        };

        std::vector<std::span<const AtomId>> cand(n);
        if (mode == TcpMode::Naive || n == 0) {
            for (std::size_t i = 0; i < n; ++i) cand[i] = known[i];
            join.run(inst.atoms, cand, emit);
        } else {
            // Position i takes an updated atom, earlier positions only stale ones.
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) cand[j] = j < i ? stale[j] : j == i ? fresh[j] : known[j];
                join.run(inst.atoms, cand, emit);
            }
        }
    }

    const std::size_t size = next.atoms.size();
    next.lambda.resize(size);
    next.present.resize(size, 0);
    next.updated.assign(size, 0);
    for (auto& [atom, clauses] : derived) {
        Dnf mu = Dnf::from_clauses(std::move(clauses), clause_cap);
        if (!inst.known(atom)) {
            next.lambda[atom] = std::move(mu);
            next.present[atom] = 1;
            next.updated[atom] = 1;
            continue;
        }
        Dnf merged = disjoin(inst.lambda[atom], mu, clause_cap);
        auto check = check_equivalent(merged, inst.lambda[atom], inst.seed + next.round);
        if (!check.exact) next.approximate = true;
        if (!check.equivalent) {
            next.lambda[atom] = std::move(merged);
            next.updated[atom] = 1;
        }
    }
    return next;
}

TcpRun tcp_fixpoint(const Program& prog, TcpMode mode, std::uint32_t max_rounds, bool keep_history,
                    std::size_t clause_cap, std::uint64_t seed) {
    TcpRun run{tcp_initial(prog, seed), {}, false};
    if (keep_history) run.history.push_back(run.final);
    while (run.final.round < max_rounds) {
        run.final = tcp_step(run.final, mode, clause_cap);
        if (keep_history) run.history.push_back(run.final);
        if (!run.final.any_updated()) {
            run.converged = true;
            break;
        }
    }
    return run;
}

}  // namespace ltg
