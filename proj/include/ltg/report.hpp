#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ltg/dnf.hpp"
#include "ltg/program.hpp"
#include "ltg/reasoner.hpp"
#include "ltg/wmc.hpp"

namespace ltg {

enum class Engine : std::uint8_t { Pr, Pcor, Tcp, DeltaTcp };
enum class SolverKind : std::uint8_t { Exact, BruteForce };

std::string engine_name(Engine e);
std::optional<Engine> parse_engine(std::string_view name);

struct RunConfig {
    Engine engine = Engine::Pr;
    ReasonerOptions reasoner;
    SolverKind solver = SolverKind::Exact;
    bool bounds = false;
    WmcOptions wmc;
    std::size_t clause_cap = kDefaultClauseCap;
    std::uint32_t tcp_max_rounds = 64;
    std::uint64_t seed = 0x5eed;
};

struct AnswerReport {
    std::string fact;
    double probability = 0.0;
    Dnf lineage;
    std::vector<std::vector<std::string>> lineage_names;
    std::vector<double> bounds;
};

struct NodeReport {
    NodeId id = 0;
    std::uint32_t rule = 0;
    std::uint32_t depth = 0;
    std::size_t entries = 0;
    std::size_t or_entries = 0;
};

struct RunStats {
    std::uint32_t rounds = 0;
    std::size_t nodes = 0;
    std::size_t entries = 0;
    std::size_t or_entries = 0;
    std::size_t allocated_entries = 0;
    std::size_t instantiations = 0;
    double reason_ms = 0.0;
    double lineage_ms = 0.0;
    double prob_ms = 0.0;
    std::vector<RoundStats> per_round;
    std::vector<NodeReport> per_node;
};

struct RunReport {
    Engine engine = Engine::Pr;
    std::vector<AnswerReport> answers;
    RunStats stats;
    bool truncated = false;
    bool bounds = false;
    /// Some lineage equivalence was decided by random-weight testing.
    bool approximate_equivalence = false;
};

/// Evaluates the queries on `parsed` with the configured engine. The reasoner
/// engines normalize first; the Tcp engines run on the program as given.
RunReport run_engine(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& cfg);

nlohmann::json to_json(const RunReport& report, bool with_stats);
std::string to_text(const RunReport& report, bool with_stats);
/// 12 significant digits.
std::string format_probability(double p);

struct CompareRow {
    std::string fact;
    std::vector<double> probabilities;  // per engine, NaN when absent
    double max_delta = 0.0;
    bool lineage_equivalent = true;
};

struct CompareReport {
    std::vector<Engine> engines;
    std::vector<CompareRow> rows;
    std::vector<RunStats> stats;
    double max_delta = 0.0;
    bool ok = true;
};

/// Runs each engine on the same input and compares answers pairwise with the first.
/// `corrupt` drops one lineage clause from the last engine's first non-trivial answer.
CompareReport compare_engines(const Program& parsed, const std::vector<Atom>& queries, const RunConfig& base,
                              const std::vector<Engine>& engines, double tolerance = 1e-9, bool corrupt = false);

nlohmann::json to_json(const CompareReport& report);

}  // namespace ltg
