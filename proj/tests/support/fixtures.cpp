#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>

#include "spectral_part/rng.hpp"

namespace fixtures {

sp::Graph make_graph(std::size_t n, const std::vector<sp::Edge>& edges) { return sp::Graph::from_edges(n, edges); }

sp::Graph two_triangles_bridge() { return make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}}); }

sp::Graph disjoint_cliques(int k, int size) {
  std::vector<sp::Edge> edges;
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        edges.emplace_back(static_cast<sp::Vertex>(b * size + i), static_cast<sp::Vertex>(b * size + j));
  return make_graph(static_cast<std::size_t>(k * size), edges);
}

sp::Graph random_connected(std::size_t n, double p, std::uint64_t seed) {
  sp::CounterRng rng(seed, sp::StreamPurpose::test_data);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = rng.below(v);
    adj[u][v] = adj[v][u] = 1;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!adj[u][v] && rng.uniform() < p) adj[u][v] = adj[v][u] = 1;
  std::vector<sp::Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (adj[u][v]) edges.emplace_back(static_cast<sp::Vertex>(u), static_cast<sp::Vertex>(v));
  return make_graph(n, edges);
}

sp::Graph hub_clusters(int k, int hubs, int max_size, std::uint64_t seed) {
  sp::CounterRng rng(seed, sp::StreamPurpose::test_data, 5);
  std::vector<sp::Edge> edges;
  std::vector<std::vector<sp::Vertex>> clusters;
  sp::Vertex next = 0;
  for (int c = 0; c < k; ++c) {
    const int size = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size - 2)));
    std::vector<sp::Vertex> members;
    for (int i = 0; i < size; ++i) members.push_back(next++);
    // A cycle keeps the cluster connected; chords are random.
    for (int i = 0; i < size; ++i) edges.emplace_back(members[i], members[(i + 1) % size]);
    if (size == 4) {
      if (rng.below(2)) edges.emplace_back(members[0], members[2]);
      if (rng.below(2)) edges.emplace_back(members[1], members[3]);
    }
    clusters.push_back(members);
  }
  for (int h = 0; h < hubs; ++h) {
    const sp::Vertex hub = next++;
    for (const auto& members : clusters) edges.emplace_back(hub, members[rng.below(members.size())]);
  }
  if (k >= 2 && rng.below(2)) edges.emplace_back(clusters[0][0], clusters[1][0]);
  return make_graph(next, edges);
}

namespace {

// Restricted growth strings: vertex v joins an existing block or opens the next one.
void partitions_rec(std::vector<int>& a, std::size_t v, int used, int k, std::vector<std::vector<int>>& out) {
  if (v == a.size()) {
    if (used == k) out.push_back(a);
    return;
  }
  if (static_cast<int>(a.size() - v) < k - used) return;
  for (int b = 0; b <= std::min(used, k - 1); ++b) {
    a[v] = b;
    partitions_rec(a, v + 1, std::max(used, b + 1), k, out);
  }
}

}  // namespace

std::vector<std::vector<int>> all_partitions(std::size_t n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, 0);
  partitions_rec(a, 0, 0, k, out);
  return out;
}

std::vector<std::vector<int>> all_tuples(std::size_t n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(n, -1);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      std::vector<char> seen(static_cast<std::size_t>(k), 0);
      for (int b : a)
        if (b >= 0) seen[static_cast<std::size_t>(b)] = 1;
      if (std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; })) out.push_back(a);
      return;
    }
    for (int b = -1; b < k; ++b) {
      a[v] = b;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<double> block_phis(const sp::Graph& g, const std::vector<int>& assignment, int k) {
  std::vector<double> cut(static_cast<std::size_t>(k), 0.0), vol(static_cast<std::size_t>(k), 0.0);
  for (const auto& [u, v] : g.edges()) {
    const int a = assignment[u], b = assignment[v];
    if (a >= 0) vol[static_cast<std::size_t>(a)] += 1;
    if (b >= 0) vol[static_cast<std::size_t>(b)] += 1;
    if (a != b) {
      if (a >= 0) cut[static_cast<std::size_t>(a)] += 1;
      if (b >= 0) cut[static_cast<std::size_t>(b)] += 1;
    }
  }
  std::vector<double> phi(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = cut[i] / vol[i];
  return phi;
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "spectral_part_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace fixtures
