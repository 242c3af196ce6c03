#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectral_part/graph.hpp"

namespace fixtures {

namespace sp = spectral_part;

sp::Graph make_graph(std::size_t n, const std::vector<sp::Edge>& edges);

/// Two triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
sp::Graph two_triangles_bridge();

/// k disjoint cliques of `size` vertices each; block i is [i*size, (i+1)*size).
sp::Graph disjoint_cliques(int k, int size);

/// Uniformly random connected graph: a random spanning tree plus each other
/// pair with probability p.
sp::Graph random_connected(std::size_t n, double p, std::uint64_t seed);

/// k small dense clusters (3 to max_size vertices) plus `hubs` extra
/// vertices, each joined to one random vertex of every cluster, and with
/// probability 1/2 one extra edge between the first two clusters. The cores
/// are cheap while absorbing a hub raises some conductance, so these graphs
/// tend to have a well-defined inter-connection constant.
sp::Graph hub_clusters(int k, int hubs, int max_size, std::uint64_t seed);

/// Every k-block partition of n vertices (blocks nonempty), each listed once.
std::vector<std::vector<int>> all_partitions(std::size_t n, int k);

/// Every assignment of n vertices to {-1, 0, .., k-1} with all k blocks
/// nonempty (disjoint k-tuples that need not cover V).
std::vector<std::vector<int>> all_tuples(std::size_t n, int k);

/// phi of each block from first principles (edge scan).
std::vector<double> block_phis(const sp::Graph& g, const std::vector<int>& assignment, int k);

std::string temp_path(const std::string& name);

}  // namespace fixtures
