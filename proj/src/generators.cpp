#include "spectral_part/generators.hpp"

#include <set>
#include <string>

#include "spectral_part/errors.hpp"
#include "spectral_part/rng.hpp"

namespace spectral_part {

Partition contiguous_partition(std::size_t n, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw InputError("cannot split " + std::to_string(n) + " vertices into " + std::to_string(k) + " blocks");
  }
  std::vector<int> assignment(n);
  for (std::size_t v = 0; v < n; ++v) {
    assignment[v] = static_cast<int>(v * static_cast<std::size_t>(k) / n);
  }
  return Partition::from_assignment(std::move(assignment), k);
}

PlantedGraph ring_of_cliques(int k, int clique_size, int bridges_per_gap, std::uint64_t seed) {
  if (k < 2) throw InputError("ring of cliques needs k >= 2");
  if (clique_size < 3) throw InputError("ring of cliques needs clique_size >= 3");
  if (bridges_per_gap < 0 ||
      static_cast<long long>(bridges_per_gap) > static_cast<long long>(clique_size) * clique_size) {
    throw InputError("bridges_per_gap must lie in [0, clique_size^2]");
  }
  const auto size = static_cast<Vertex>(clique_size);
  std::vector<Edge> edges;
  for (int c = 0; c < k; ++c) {
    const Vertex base = static_cast<Vertex>(c) * size;
    for (Vertex a = 0; a < size; ++a) {
      for (Vertex b = a + 1; b < size; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  CounterRng rng(seed, StreamPurpose::ring_bridges);
  const int gaps = k == 2 ? 1 : k;
  for (int gap = 0; gap < gaps; ++gap) {
    const Vertex left = static_cast<Vertex>(gap) * size;
    const Vertex right = static_cast<Vertex>((gap + 1) % k) * size;
    std::set<Edge> chosen;
    // Repeated draws are discarded; the stream simply moves on.
    while (static_cast<int>(chosen.size()) < bridges_per_gap) {
      const Vertex u = left + static_cast<Vertex>(rng.below(size));
      const Vertex v = right + static_cast<Vertex>(rng.below(size));
      if (chosen.emplace(std::min(u, v), std::max(u, v)).second) edges.emplace_back(u, v);
    }
  }
  const auto n = static_cast<std::size_t>(k) * size;
  return {Graph::from_edges(n, edges), contiguous_partition(n, k)};
}

PlantedGraph stochastic_block_model(std::span<const int> sizes, double p_in, double p_out,
                                    std::uint64_t seed) {
  if (sizes.empty()) throw InputError("SBM needs at least one block");
  if (!(p_in > 0.0) || p_in > 1.0) throw InputError("SBM needs 0 < p_in <= 1");
  if (!(p_out >= 0.0) || p_out > p_in) throw InputError("SBM needs 0 <= p_out <= p_in");
  std::vector<int> assignment;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (sizes[b] < 2) throw InputError("SBM block sizes must be >= 2");
    assignment.insert(assignment.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  }
  const std::size_t n = assignment.size();

  // Pair (u, v), u < v, uses counter u*n + v so the draw is independent of
  // iteration order.
  CounterRng rng(seed, StreamPurpose::sbm_edges);
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = assignment[u] == assignment[v] ? p_in : p_out;
      if (rng.uniform_at(u * n + v) < p) {
        adjacent[u][v] = adjacent[v][u] = 1;
        ++degree[u];
        ++degree[v];
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::uint64_t round = 0; degree[u] == 0; ++round) {
      if (round > 1'000'000) throw InputError("SBM isolated-vertex repair did not terminate");
      CounterRng repair(seed, StreamPurpose::sbm_repair, u * 1'000'003ULL + round);
      for (std::size_t v = 0; v < n; ++v) {
        if (v == u || assignment[v] != assignment[u]) continue;
        if (repair.uniform_at(v) < p_in && !adjacent[u][v]) {
          adjacent[u][v] = adjacent[v][u] = 1;
          ++degree[u];
          ++degree[v];
        }
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (adjacent[u][v]) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return {Graph::from_edges(n, edges),
          Partition::from_assignment(std::move(assignment), static_cast<int>(sizes.size()))};
}

PlantedGraph complete_graph(int n, int k) {
  if (n < 2) throw InputError("complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < static_cast<Vertex>(n); ++a) {
    for (Vertex b = a + 1; b < static_cast<Vertex>(n); ++b) edges.emplace_back(a, b);
  }
  const auto size = static_cast<std::size_t>(n);
  return {Graph::from_edges(size, edges), contiguous_partition(size, k)};
}

PlantedGraph path_graph(int n, int k) {
  if (n < 2) throw InputError("path graph needs n >= 2");
  std::vector<Edge> edges;
  for (Vertex a = 0; a + 1 < static_cast<Vertex>(n); ++a) edges.emplace_back(a, a + 1);
  const auto size = static_cast<std::size_t>(n);
  return {Graph::from_edges(size, edges), contiguous_partition(size, k)};
}

}  // namespace spectral_part
