#include "spectral_part/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "spectral_part/errors.hpp"

namespace spectral_part {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw InputError("graph must have at least one vertex");
  if (n > std::size_t{UINT32_MAX}) throw InputError("too many vertices");

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a vertex outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 0) throw InputError("vertex " + std::to_string(v) + " is isolated");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    auto dup = std::adjacent_find(first, last);
    if (dup != last) {
      throw InputError("repeated edge (" + std::to_string(v) + ", " + std::to_string(*dup) + ")");
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u >= num_vertices() || v >= num_vertices()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::num_components() const {
  const std::size_t n = num_vertices();
  std::vector<char> seen(n, 0);
  std::size_t components = 0;
  std::queue<Vertex> frontier;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    frontier.push(s);
    while (!frontier.empty()) {
      Vertex u = frontier.front();
      frontier.pop();
      for (Vertex v : neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          frontier.push(v);
        }
      }
    }
  }
  return components;
}

std::vector<char> membership(const Graph& g, std::span<const Vertex> s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) {
    if (v >= g.num_vertices()) {
      throw InputError("vertex id " + std::to_string(v) + " out of range");
    }
    in[v] = 1;
  }
  return in;
}

std::uint64_t volume(const Graph& g, std::span<const Vertex> s) {
  auto in = membership(g, s);
  std::uint64_t total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (in[v]) total += g.degree(v);
  }
  return total;
}

std::uint64_t cut(const Graph& g, std::span<const Vertex> s) {
  auto in = membership(g, s);
  std::uint64_t boundary = 0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (!in[u]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (!in[v]) ++boundary;
    }
  }
  return boundary;
}

Ratio conductance(const Graph& g, std::span<const Vertex> s) {
  if (s.empty()) throw InputError("conductance of the empty set is undefined");
  return {cut(g, s), volume(g, s)};
}

std::uint64_t sym_diff_volume(const Graph& g, std::span<const Vertex> a,
                              std::span<const Vertex> p) {
  auto in_a = membership(g, a);
  auto in_p = membership(g, p);
  std::uint64_t total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (in_a[v] != in_p[v]) total += g.degree(v);
  }
  return total;
}

Partition Partition::from_assignment(std::vector<int> assignment, int k, bool tuple_mode) {
  if (k < 1) throw InputError("partition needs at least one block");
  Partition p;
  p.tuple_mode_ = tuple_mode;
  p.blocks_.resize(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    const int b = assignment[v];
    if (b == kUncovered && tuple_mode) continue;
    if (b < 0 || b >= k) {
      throw InputError("vertex " + std::to_string(v) + " has block " + std::to_string(b) +
                       " outside [0, " + std::to_string(k) + ")");
    }
    p.blocks_[static_cast<std::size_t>(b)].push_back(static_cast<Vertex>(v));
  }
  for (int i = 0; i < k; ++i) {
    if (p.blocks_[static_cast<std::size_t>(i)].empty()) {
      throw InputError("block " + std::to_string(i) + " is empty");
    }
  }
  p.assignment_ = std::move(assignment);
  return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<Vertex>>& blocks,
                                 bool tuple_mode) {
  std::vector<int> assignment(n, kUncovered);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Vertex v : blocks[i]) {
      if (v >= n) throw InputError("vertex id " + std::to_string(v) + " out of range");
      if (assignment[v] != kUncovered) {
        throw InputError("vertex " + std::to_string(v) + " appears in blocks " +
                         std::to_string(assignment[v]) + " and " + std::to_string(i));
      }
      assignment[v] = static_cast<int>(i);
    }
  }
  if (!tuple_mode) {
    for (std::size_t v = 0; v < n; ++v) {
      if (assignment[v] == kUncovered) {
        throw InputError("vertex " + std::to_string(v) + " is not covered by any block");
      }
    }
  }
  return from_assignment(std::move(assignment), static_cast<int>(blocks.size()), tuple_mode);
}

BlockStats block_stats(const Graph& g, const Partition& p) {
  if (p.num_vertices() != g.num_vertices()) {
    throw InputError("partition covers " + std::to_string(p.num_vertices()) +
                     " vertices but graph has " + std::to_string(g.num_vertices()));
  }
  const auto k = static_cast<std::size_t>(p.num_blocks());
  BlockStats stats{std::vector<std::uint64_t>(k, 0), std::vector<std::uint64_t>(k, 0)};
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const int bu = p.block_of(u);
    if (bu == Partition::kUncovered) continue;
    stats.volume[static_cast<std::size_t>(bu)] += g.degree(u);
    for (Vertex v : g.neighbors(u)) {
      if (p.block_of(v) != bu) ++stats.cut[static_cast<std::size_t>(bu)];
    }
  }
  return stats;
}

std::vector<double> block_conductances(const Graph& g, const Partition& p) {
  auto stats = block_stats(g, p);
  std::vector<double> phi(stats.cut.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = stats.conductance(static_cast<int>(i)).value();
  return phi;
}

double partition_phi(const Graph& g, const Partition& p) {
  auto phi = block_conductances(g, p);
  return *std::max_element(phi.begin(), phi.end());
}

double partition_avg_phi(const Graph& g, const Partition& p) {
  auto phi = block_conductances(g, p);
  double sum = 0.0;
  for (double x : phi) sum += x;
  return sum / static_cast<double>(phi.size());
}

}  // namespace spectral_part
