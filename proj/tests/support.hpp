#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ltg/dnf.hpp"
#include "ltg/program.hpp"

namespace ltg::fixtures {

struct RandomProgramOptions {
    std::size_t max_facts = 12;  // including dummy facts of annotated rules
    std::size_t max_rules = 5;
    std::size_t constants = 4;
    bool rule_probabilities = true;
    bool facts_on_derived = true;
};

/// Program text with a reachability core (one recursive rule) plus random extra rules.
std::string random_program_text(std::mt19937_64& rng, const RandomProgramOptions& opts = {});

/// Least model by naive bottom-up evaluation over rendered atoms, using only the
/// facts whose variable is set in `world` (all facts when empty).
std::set<std::string> least_model(const Program& prog, const std::vector<bool>& world = {});

/// Minimal explanations of every atom entailed by some subset of the facts,
/// found by evaluating the least model of all 2^|F| subsets.
std::map<std::string, Dnf> brute_force_lineage(const Program& prog);

Dnf random_dnf(std::mt19937_64& rng, std::size_t vars, std::size_t max_clauses, std::size_t max_width = 4);

std::string running_example(double p = 0.5);
std::string collapse_example(std::size_t n, double p = 0.5);

}  // namespace ltg::fixtures
