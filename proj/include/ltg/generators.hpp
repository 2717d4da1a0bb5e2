#pragma once

#include <cstdint>
#include <string>

namespace ltg {

/// Reachability program over a random graph of `nodes` vertices with a power-law
/// degree sequence (configuration model), at most 2 * nodes undirected edges,
/// each encoded as two directed e-facts with independent probabilities in (0,1].
/// Throws ErrorKind::Contract when nodes < 2. Deterministic per seed.
std::string generate_powerlaw(std::uint32_t nodes, std::uint64_t seed);

/// Reachability program over the path a -> b -> ... with `nodes` vertices.
std::string generate_chain(std::uint32_t nodes, std::uint64_t seed);

/// Name of the i-th generated constant: a..z, then a1..z1, ...
std::string node_name(std::uint32_t i);

}  // namespace ltg
