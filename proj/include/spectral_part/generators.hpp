#pragma once

#include <cstdint>
#include <span>

#include "spectral_part/graph.hpp"

namespace spectral_part {

struct PlantedGraph {
  Graph graph;
  Partition planted;
};

/// k cliques of `clique_size` vertices on a ring; consecutive cliques are
/// joined by `bridges_per_gap` distinct edges with seeded random endpoints.
/// With k = 2 there is a single gap. Block i holds vertices
/// [i*clique_size, (i+1)*clique_size).
PlantedGraph ring_of_cliques(int k, int clique_size, int bridges_per_gap, std::uint64_t seed);

/// Stochastic block model with blocks of the given sizes. A vertex left
/// isolated has its within-block edges redrawn (fresh sub-stream per round)
/// until it has degree >= 1.
PlantedGraph stochastic_block_model(std::span<const int> sizes, double p_in, double p_out,
                                    std::uint64_t seed);

/// K_n with a planted partition of k contiguous, nearly equal chunks.
PlantedGraph complete_graph(int n, int k);

/// Path 0-1-...-(n-1) with k contiguous chunks.
PlantedGraph path_graph(int n, int k);

/// Contiguous chunk partition of 0..n-1 into k nearly equal blocks.
Partition contiguous_partition(std::size_t n, int k);

}  // namespace spectral_part
