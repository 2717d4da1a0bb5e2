#include "ltg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "ltg/error.hpp"

namespace ltg {
namespace {

constexpr const char* kReachRules =
    "p(X,Y) :- e(X,Y).\n"
    "p(X,Y) :- p(X,Z), p(Z,Y).\n";

// Three decimals, never zero.
std::string draw_probability(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(1, 1000);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.3f", dist(rng) / 1000.0);
    return buf;
}

void require_nodes(std::uint32_t nodes) {
    if (nodes < 2) throw Error(ErrorKind::Contract, "generator needs at least 2 nodes, got " + std::to_string(nodes));
}

}  // namespace

std::string node_name(std::uint32_t i) {
    std::string name(1, static_cast<char>('a' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
}

std::string generate_powerlaw(std::uint32_t nodes, std::uint64_t seed) {
    require_nodes(nodes);
    std::mt19937_64 rng(seed);

    // P(d) proportional to d^-2.5 over 1..nodes-1.
    std::vector<double> mass;
    for (std::uint32_t d = 1; d < nodes; ++d) mass.push_back(std::pow(d, -2.5));
    std::discrete_distribution<std::uint32_t> degree(mass.begin(), mass.end());

    std::vector<std::uint32_t> stubs;
    for (std::uint32_t v = 0; v < nodes; ++v) {
        std::uint32_t d = degree(rng) + 1;
        for (std::uint32_t i = 0; i < d; ++i) stubs.push_back(v);
    }
    if (stubs.size() % 2) stubs.push_back(static_cast<std::uint32_t>(rng() % nodes));
    std::shuffle(stubs.begin(), stubs.end(), rng);

    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order;
    for (std::size_t i = 0; i + 1 < stubs.size() && order.size() < 2 * std::size_t{nodes}; i += 2) {
        auto u = stubs[i], v = stubs[i + 1];
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (edges.insert(key).second) order.push_back(key);
    }

    std::ostringstream os;
    os << "% power-law graph, " << nodes << " nodes, " << order.size() << " undirected edges, seed " << seed << '\n';
    for (auto [u, v] : order) {
        os << draw_probability(rng) << "::e(" << node_name(u) << ',' << node_name(v) << ").\n";
        os << draw_probability(rng) << "::e(" << node_name(v) << ',' << node_name(u) << ").\n";
    }
    os << kReachRules;
    os << "query(p(" << node_name(0) << ",X)).\n";
    return os.str();
}

std::string generate_chain(std::uint32_t nodes, std::uint64_t seed) {
    require_nodes(nodes);
    std::mt19937_64 rng(seed);
    std::ostringstream os;
    os << "% chain, " << nodes << " nodes, seed " << seed << '\n';
    for (std::uint32_t i = 0; i + 1 < nodes; ++i)
        os << draw_probability(rng) << "::e(" << node_name(i) << ',' << node_name(i + 1) << ").\n";
    os << kReachRules;
    os << "query(p(" << node_name(0) << ',' << node_name(nodes - 1) << ")).\n";
    return os.str();
}

}  // namespace ltg
