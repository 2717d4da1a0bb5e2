#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ltg/error.hpp"
#include "ltg/generators.hpp"
#include "ltg/normalize.hpp"
#include "ltg/parser.hpp"
#include "ltg/reasoner.hpp"
#include "ltg/report.hpp"

namespace {

enum Exit { kOk = 0, kInput = 1, kResource = 2, kBudget = 3, kMismatch = 4 };

struct Flags {
    std::string program;
    std::vector<std::string> queries;
    std::string collapse = "off";
    std::uint32_t threshold = 10;
    std::optional<std::uint32_t> max_depth;
    std::optional<std::size_t> max_entries;
    std::optional<std::size_t> max_nodes;
    bool lean_graph = false;
    std::string solver = "exact";
    bool bounds = false;
    bool stats = false;
    std::string output = "json";
    std::uint64_t seed = 0x5eed;
    bool dump_graph = false;
    std::string engine;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--program", f.program, "program file")->required();
    cmd->add_option("--query", f.queries, "query atom; defaults to the program's query directives");
    cmd->add_option("--collapse", f.collapse)->check(CLI::IsMember({"auto", "on", "off"}));
    cmd->add_option("--threshold", f.threshold)->check(CLI::Range(2u, 1u << 30));
    cmd->add_option("--max-depth", f.max_depth);
    cmd->add_option("--max-entries", f.max_entries);
    cmd->add_option("--max-nodes", f.max_nodes, "upper bound on execution graph nodes");
    cmd->add_flag("--lean-graph", f.lean_graph, "never create graph nodes whose parents cannot join");
    cmd->add_option("--solver", f.solver)->check(CLI::IsMember({"exact", "bruteforce"}));
    cmd->add_flag("--bounds", f.bounds, "per-round probability bounds");
    cmd->add_flag("--stats", f.stats, "detailed statistics");
    cmd->add_option("--output", f.output)->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", f.seed);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ltg::Error(ltg::ErrorKind::Parse, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string kind_name(ltg::ErrorKind k) {
    using ltg::ErrorKind;
    switch (k) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Arity: return "arity";
        case ErrorKind::Probability: return "probability";
        case ErrorKind::Unsafe: return "unsafe-rule";
        case ErrorKind::UnknownNode: return "unknown-node";
        case ErrorKind::UnknownPredicate: return "unknown-predicate";
        case ErrorKind::ResourceLimit: return "resource-limit";
        case ErrorKind::LineageTooLarge: return "lineage-too-large";
        case ErrorKind::WmcBudget: return "wmc-budget";
        case ErrorKind::TooManyVariables: return "too-many-variables";
        case ErrorKind::Contract: return "contract";
    }
    return "error";
}

int exit_code(ltg::ErrorKind k) {
    using ltg::ErrorKind;
    switch (k) {
        case ErrorKind::ResourceLimit:
        case ErrorKind::LineageTooLarge:
        case ErrorKind::TooManyVariables: return kResource;
        case ErrorKind::WmcBudget: return kBudget;
        default: return kInput;
    }
}

int report_error(const ltg::Error& e) {
    nlohmann::json j = {{"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
    if (auto* pe = dynamic_cast<const ltg::ParseError*>(&e)) {
        j["error"]["line"] = pe->line();
        j["error"]["column"] = pe->column();
    }
    if (auto* re = dynamic_cast<const ltg::ResourceLimitError*>(&e)) {
        j["error"]["rounds"] = nlohmann::json::array();
        for (const auto& r : re->rounds())
            j["error"]["rounds"].push_back({{"round", r.round},
                                            {"live_nodes", r.live_nodes},
                                            {"stored_entries", r.stored_entries},
                                            {"allocated_entries", r.allocated_entries}});
    }
    std::cout << j.dump(2) << '\n';
    return exit_code(e.kind());
}

struct Loaded {
    ltg::Program program;
    std::vector<ltg::Atom> queries;
};

Loaded load(const Flags& f) {
    Loaded l{ltg::parse_program(read_file(f.program)), {}};
    for (const auto& q : f.queries) l.queries.push_back(ltg::parse_atom(l.program, q));
    if (l.queries.empty()) l.queries = l.program.queries;
    if (l.queries.empty()) throw ltg::Error(ltg::ErrorKind::Parse, "no query given and none in the program");
    return l;
}

ltg::RunConfig config(const Flags& f, ltg::Engine engine) {
    ltg::RunConfig cfg;
    cfg.engine = engine;
    cfg.reasoner.collapse = f.collapse == "on"     ? ltg::CollapseMode::On
                            : f.collapse == "auto" ? ltg::CollapseMode::Auto
                                                   : ltg::CollapseMode::Off;
    cfg.reasoner.threshold = f.threshold;
    cfg.reasoner.max_depth = f.max_depth;
    cfg.reasoner.max_entries = f.max_entries;
    cfg.reasoner.max_nodes = f.max_nodes;
    cfg.reasoner.skip_unjoinable = f.lean_graph;
    if (f.max_depth) cfg.tcp_max_rounds = *f.max_depth;
    cfg.solver = f.solver == "bruteforce" ? ltg::SolverKind::BruteForce : ltg::SolverKind::Exact;
    cfg.bounds = f.bounds;
    cfg.seed = f.seed;
    return cfg;
}

void emit(const ltg::RunReport& r, const Flags& f) {
    if (f.output == "text")
        std::cout << ltg::to_text(r, f.stats);
    else
        std::cout << ltg::to_json(r, f.stats).dump(2) << '\n';
}

int cmd_run(const Flags& f) {
    auto l = load(f);
    auto cfg = config(f, f.collapse == "off" ? ltg::Engine::Pr : ltg::Engine::Pcor);
    if (f.dump_graph) ltg::reason(ltg::normalize(l.program), cfg.reasoner).graph.dump(std::cerr, l.program);
    emit(ltg::run_engine(l.program, l.queries, cfg), f);
    return kOk;
}

int cmd_oracle(const Flags& f) {
    auto l = load(f);
    emit(ltg::run_engine(l.program, l.queries, config(f, *ltg::parse_engine(f.engine))), f);
    return kOk;
}

int cmd_compare(const Flags& f, const std::vector<std::string>& engine_names, double tolerance, bool corrupt) {
    auto l = load(f);
    std::vector<ltg::Engine> engines;
    for (const auto& n : engine_names) engines.push_back(*ltg::parse_engine(n));
    auto rep = ltg::compare_engines(l.program, l.queries, config(f, ltg::Engine::Pr), engines, tolerance, corrupt);
    if (f.output == "text") {
        for (const auto& row : rep.rows) {
            std::cout << row.fact;
            for (double p : row.probabilities) std::cout << '\t' << ltg::format_probability(p);
            std::cout << "\tdelta " << row.max_delta << (row.lineage_equivalent ? "" : " lineage-mismatch") << '\n';
        }
        std::cout << (rep.ok ? "ok" : "MISMATCH") << '\n';
    } else {
        std::cout << ltg::to_json(rep).dump(2) << '\n';
    }
    return rep.ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact probabilistic Datalog reasoning over lineage trigger graphs"};
    app.require_subcommand(1);

    Flags run_flags;
    auto* run = app.add_subcommand("run", "reason with the trigger-graph engine");
    add_common(run, run_flags);
    run->add_flag("--dump-graph", run_flags.dump_graph, "print the execution graph to stderr");

    Flags oracle_flags;
    auto* oracle = app.add_subcommand("oracle", "reason with the lineage fixpoint operator");
    add_common(oracle, oracle_flags);
    oracle_flags.engine = "tcp";
    oracle->add_option("--engine", oracle_flags.engine)->check(CLI::IsMember({"tcp", "delta-tcp"}));

    std::string kind = "powerlaw";
    std::uint32_t nodes = 10;
    std::uint64_t gen_seed = 1;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "generate a reachability benchmark program");
    gen->add_option("--kind", kind)->check(CLI::IsMember({"powerlaw", "chain"}));
    gen->add_option("--nodes", nodes)->required();
    gen->add_option("--seed", gen_seed);
    gen->add_option("--out", out_path, "write to a file instead of stdout");

    Flags compare_flags;
    std::vector<std::string> engines{"pr", "pcor", "tcp"};
    double tolerance = 1e-9;
    bool corrupt = false;
    auto* compare = app.add_subcommand("compare", "run several engines and compare their answers");
    add_common(compare, compare_flags);
    compare->add_option("--engines", engines)
        ->delimiter(',')
        ->check(CLI::IsMember({"pr", "pcor", "tcp", "delta-tcp"}));
    compare->add_option("--tolerance", tolerance);
    compare->add_flag("--corrupt-lineage", corrupt)->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(run_flags);
        if (*oracle) return cmd_oracle(oracle_flags);
        if (*compare) return cmd_compare(compare_flags, engines, tolerance, corrupt);
        if (*gen) {
            std::string text = kind == "chain" ? ltg::generate_chain(nodes, gen_seed) : ltg::generate_powerlaw(nodes, gen_seed);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path);
                out << text;
            }
            return kOk;
        }
    } catch (const ltg::Error& e) {
        return report_error(e);
    }
    return kOk;
}
