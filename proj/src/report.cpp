#include "ltg/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "ltg/equivalence.hpp"
#include "ltg/lineage.hpp"
#include "ltg/normalize.hpp"
#include "ltg/tcp_oracle.hpp"

namespace ltg {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

double solve(const Dnf& d, const VarWeights& w, const RunConfig& cfg) {
    return cfg.solver == SolverKind::BruteForce ? brute_force_probability(d, w) : probability(d, w, cfg.wmc);
}

struct Found {
    AtomId atom;
    std::string fact;
    Dnf lineage;
};

void add_answers(std::map<std::string, Found>& into, std::vector<Answer> answers) {
    for (auto& a : answers) into.try_emplace(a.fact, Found{a.atom, a.fact, std::move(a.lineage)});
}

RunReport run_reasoner(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& cfg) {
    RunReport report;
    report.engine = cfg.engine;
    report.bounds = cfg.bounds;
    const VarWeights weights = VarWeights::of(parsed);

    auto t0 = Clock::now();
    ReasonerOptions opts = cfg.reasoner;
    if (cfg.engine == Engine::Pcor && opts.collapse == CollapseMode::Off) opts.collapse = CollapseMode::Auto;
    if (cfg.engine == Engine::Pr) opts.collapse = CollapseMode::Off;
    ReasoningResult result = reason(normalize(parsed), opts);
    report.stats.reason_ms = elapsed_ms(t0);

    t0 = Clock::now();
    std::map<std::string, Found> found;
    for (const auto& q : queries) add_answers(found, collect_lineage(result, q, cfg.clause_cap));
    report.stats.lineage_ms = elapsed_ms(t0);

    std::vector<std::unordered_map<AtomId, Dnf>> snapshots;
    const std::uint32_t depth = result.graph.depth();
    if (cfg.bounds) {
        for (std::uint32_t k = 1; k <= depth; ++k) snapshots.push_back(round_bound_snapshot(result, k, cfg.clause_cap));
    }

    t0 = Clock::now();
    auto namer = fact_namer(parsed);
    for (auto& [fact, f] : found) {
        AnswerReport a;
        a.fact = fact;
        a.probability = solve(f.lineage, weights, cfg);
        a.lineage_names = f.lineage.named(namer);
        for (const auto& snap : snapshots) {
            Dnf d;
            if (auto var = result.atoms.fact_var(f.atom)) d = Dnf::literal(*var);
            if (auto it = snap.find(f.atom); it != snap.end()) d = disjoin(d, it->second, cfg.clause_cap);
            a.bounds.push_back(solve(d, weights, cfg));
        }
        a.lineage = std::move(f.lineage);
        report.answers.push_back(std::move(a));
    }
    report.stats.prob_ms = elapsed_ms(t0);

    auto& s = report.stats;
    s.rounds = result.rounds;
    s.nodes = result.graph.live_count();
    s.entries = result.stored_entries();
    s.or_entries = result.or_entries();
    s.per_round = result.per_round;
    if (!s.per_round.empty()) s.allocated_entries = s.per_round.back().allocated_entries;
    for (const auto& r : s.per_round) s.instantiations += r.candidate_trees;
    for (const auto& n : result.graph.nodes()) {
        if (n.removed) continue;
        const auto& store = result.stores.at(n.id);
        s.per_node.push_back({n.id, n.rule, n.depth, store.stored_count(), store.or_count()});
    }
    report.truncated = result.truncated;
    return report;
}

RunReport run_tcp(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& cfg) {
    RunReport report;
    report.engine = cfg.engine;
    report.bounds = cfg.bounds;
    const VarWeights weights = VarWeights::of(parsed);
    const TcpMode mode = cfg.engine == Engine::DeltaTcp ? TcpMode::Delta : TcpMode::Naive;

    auto t0 = Clock::now();
    TcpRun run = tcp_fixpoint(parsed, mode, cfg.tcp_max_rounds, cfg.bounds, cfg.clause_cap, cfg.seed);
    report.stats.reason_ms = elapsed_ms(t0);
    const TcpInstance& fin = run.final;

    t0 = Clock::now();
    std::map<std::string, Found> found;
    for (const auto& q : queries) {
        if (q.predicate >= parsed.symbols.predicate_count())
            throw Error(ErrorKind::UnknownPredicate, "unknown predicate in query");
        for (AtomId a : fin.atoms.by_predicate(q.predicate)) {
            if (!fin.known(a) || !matches(q, fin.atoms.args(a))) continue;
            auto text = fin.atoms.render(a, parsed.symbols);
            found.try_emplace(text, Found{a, text, fin.lambda[a]});
        }
    }
    report.stats.lineage_ms = elapsed_ms(t0);

    // The converging round only confirms the previous one.
    std::size_t last_round = run.converged && fin.round > 1 ? fin.round - 1 : fin.round;

    t0 = Clock::now();
    auto namer = fact_namer(parsed);
    for (auto& [fact, f] : found) {
        AnswerReport a;
        a.fact = fact;
        a.probability = solve(f.lineage, weights, cfg);
        a.lineage_names = f.lineage.named(namer);
        for (std::size_t k = 1; k < run.history.size() && k <= last_round; ++k) {
            const TcpInstance& inst = run.history[k];
            a.bounds.push_back(inst.known(f.atom) ? solve(inst.lambda[f.atom], weights, cfg) : 0.0);
        }
        a.lineage = std::move(f.lineage);
        report.answers.push_back(std::move(a));
    }
    report.stats.prob_ms = elapsed_ms(t0);

    auto& s = report.stats;
    s.rounds = fin.round;
    s.nodes = static_cast<std::size_t>(std::count(fin.present.begin(), fin.present.end(), 1));
    for (std::size_t a = 0; a < fin.lambda.size(); ++a)
        if (fin.present[a]) s.entries += fin.lambda[a].size();
    s.instantiations = fin.instantiations;
    report.truncated = !run.converged;
    report.approximate_equivalence = fin.approximate;
    return report;
}

nlohmann::json round_json(const RoundStats& r) {
    return {{"round", r.round},
            {"new_nodes", r.new_nodes},
            {"removed_nodes", r.removed_nodes},
            {"live_nodes", r.live_nodes},
            {"candidate_trees", r.candidate_trees},
            {"stored_entries", r.stored_entries},
            {"allocated_entries", r.allocated_entries},
            {"or_entries", r.or_entries},
            {"time_ms", r.millis}};
}

nlohmann::json stats_json(const RunStats& s, bool detail) {
    nlohmann::json j = {{"rounds", s.rounds},
                        {"nodes", s.nodes},
                        {"entries", s.entries},
                        {"or_entries", s.or_entries},
                        {"instantiations", s.instantiations},
                        {"time_ms", {{"reason", s.reason_ms}, {"lineage", s.lineage_ms}, {"prob", s.prob_ms}}}};
    if (!detail) return j;
    j["allocated_entries"] = s.allocated_entries;
    j["per_round"] = nlohmann::json::array();
    for (const auto& r : s.per_round) j["per_round"].push_back(round_json(r));
    j["per_node"] = nlohmann::json::array();
    for (const auto& n : s.per_node)
        j["per_node"].push_back({{"node", n.id},
                                 {"rule", n.rule},
                                 {"depth", n.depth},
                                 {"entries", n.entries},
                                 {"or_entries", n.or_entries}});
    return j;
}

}  // namespace

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Pr: return "pr";
        case Engine::Pcor: return "pcor";
        case Engine::Tcp: return "tcp";
        case Engine::DeltaTcp: return "delta-tcp";
    }
    return "?";
}

std::optional<Engine> parse_engine(std::string_view name) {
    if (name == "pr") return Engine::Pr;
    if (name == "pcor") return Engine::Pcor;
    if (name == "tcp") return Engine::Tcp;
    if (name == "delta-tcp") return Engine::DeltaTcp;
    return std::nullopt;
}

RunReport run_engine(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& cfg) {
    if (cfg.engine == Engine::Tcp || cfg.engine == Engine::DeltaTcp) return run_tcp(parsed, queries, cfg);
    return run_reasoner(parsed, queries, cfg);
}

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", p);
    return buf;
}

nlohmann::json to_json(const RunReport& report, bool with_stats) {
    nlohmann::json answers = nlohmann::json::array();
    for (const auto& a : report.answers) {
        nlohmann::json j = {{"fact", a.fact},
                            {"probability", std::stod(format_probability(a.probability))},
                            {"lineage", a.lineage_names}};
        if (report.bounds) {
            j["bounds"] = nlohmann::json::array();
            for (double b : a.bounds) j["bounds"].push_back(std::stod(format_probability(b)));
        }
        answers.push_back(std::move(j));
    }
    nlohmann::json out = {{"engine", engine_name(report.engine)},
                          {"answers", std::move(answers)},
                          {"stats", stats_json(report.stats, with_stats)},
                          {"truncated", report.truncated}};
    if (report.approximate_equivalence) out["approximate_equivalence"] = true;
    return out;
}

std::string to_text(const RunReport& report, bool with_stats) {
    std::ostringstream os;
    os << "engine " << engine_name(report.engine) << (report.truncated ? " (truncated)" : "") << '\n';
    for (const auto& a : report.answers) {
        os << a.fact << '\t' << format_probability(a.probability) << '\n';
        os << "  lineage";
        for (const auto& clause : a.lineage_names) {
            os << " {";
            for (std::size_t i = 0; i < clause.size(); ++i) os << (i ? "," : "") << clause[i];
            os << '}';
        }
        os << '\n';
        if (report.bounds) {
            os << "  bounds";
            for (double b : a.bounds) os << ' ' << format_probability(b);
            os << '\n';
        }
    }
    const auto& s = report.stats;
    os << "rounds " << s.rounds << " nodes " << s.nodes << " entries " << s.entries << " or_entries "
       << s.or_entries << " instantiations " << s.instantiations << '\n';
    if (with_stats) {
        os << "time_ms reason " << s.reason_ms << " lineage " << s.lineage_ms << " prob " << s.prob_ms << '\n';
        for (const auto& n : s.per_node)
            os << "node " << n.id << " rule " << n.rule << " depth " << n.depth << " entries " << n.entries
               << " or_entries " << n.or_entries << '\n';
    }
    return os.str();
}

CompareReport compare_engines(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& base,
                              const std::vector<Engine>& engines, double tolerance, bool corrupt) {
    CompareReport out;
    out.engines = engines;
    std::vector<RunReport> reports;
    for (Engine e : engines) {
        RunConfig cfg = base;
        cfg.engine = e;
        cfg.bounds = false;
        reports.push_back(run_engine(parsed, queries, cfg));
        out.stats.push_back(reports.back().stats);
    }
    if (corrupt && !reports.empty()) {
        const VarWeights weights = VarWeights::of(parsed);
        for (auto& a : reports.back().answers) {
            if (a.lineage.size() < 1 || a.lineage.is_true()) continue;
            auto clauses = a.lineage.clauses();
            clauses.erase(clauses.begin());
            a.lineage = Dnf::from_clauses(std::move(clauses));
            a.probability = probability(a.lineage, weights, base.wmc);
            break;
        }
    }

    std::map<std::string, CompareRow> rows;
    std::map<std::string, std::vector<const Dnf*>> lineages;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        for (const auto& a : reports[i].answers) {
            auto& row = rows[a.fact];
            row.fact = a.fact;
            row.probabilities.resize(reports.size(), std::nan(""));
            row.probabilities[i] = a.probability;
            auto& ls = lineages[a.fact];
            ls.resize(reports.size(), nullptr);
            ls[i] = &a.lineage;
        }
    }
    for (auto& [fact, row] : rows) {
        const auto& ls = lineages[fact];
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (std::isnan(row.probabilities[i])) {
                row.max_delta = std::numeric_limits<double>::infinity();
                row.lineage_equivalent = false;
                continue;
            }
            row.max_delta = std::max(row.max_delta, std::abs(row.probabilities[i] - row.probabilities[0]));
            if (i > 0 && ls[0] && !check_equivalent(*ls[0], *ls[i], base.seed).equivalent) row.lineage_equivalent = false;
        }
        out.max_delta = std::max(out.max_delta, row.max_delta);
        if (row.max_delta > tolerance || !row.lineage_equivalent) out.ok = false;
        out.rows.push_back(std::move(row));
    }
    return out;
}

nlohmann::json to_json(const CompareReport& report) {
    nlohmann::json engines = nlohmann::json::array();
    for (std::size_t i = 0; i < report.engines.size(); ++i) {
        const auto& s = report.stats[i];
        engines.push_back({{"engine", engine_name(report.engines[i])},
                           {"rounds", s.rounds},
                           {"instantiations", s.instantiations},
                           {"time_ms", {{"reason", s.reason_ms}, {"lineage", s.lineage_ms}, {"prob", s.prob_ms}}}});
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json probs = nlohmann::json::array();
        for (double p : r.probabilities) probs.push_back(std::isnan(p) ? nlohmann::json(nullptr) : nlohmann::json(p));
        rows.push_back({{"fact", r.fact},
                        {"probabilities", probs},
                        {"delta", std::isinf(r.max_delta) ? nlohmann::json(nullptr) : nlohmann::json(r.max_delta)},
                        {"lineage_equivalent", r.lineage_equivalent}});
    }
    return {{"engines", engines},
            {"answers", rows},
            {"max_delta", std::isinf(report.max_delta) ? nlohmann::json(nullptr) : nlohmann::json(report.max_delta)},
            {"ok", report.ok}};
}

}  // namespace ltg
