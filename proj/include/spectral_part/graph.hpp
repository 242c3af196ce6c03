#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spectral_part {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Exact non-negative rational. Conductances are kept as integer cut/volume
/// pairs and only converted to binary floating point by value().
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(Ratio a, Ratio b) noexcept {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<(Ratio a, Ratio b) noexcept {
    return static_cast<unsigned __int128>(a.num) * b.den <
           static_cast<unsigned __int128>(b.num) * a.den;
  }
};

/// Undirected, unweighted simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted by id. Every vertex has degree >= 1; graphs with
/// isolated vertices, self-loops or repeated edges are rejected at
/// construction. Immutable once built.
class Graph {
 public:
  /// Throws InputError on out-of-range ids, self-loops, repeated edges
  /// (in either orientation) and isolated vertices.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::uint64_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// mu(V) = 2m.
  std::uint64_t total_volume() const noexcept { return adjacency_.size(); }

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Number of connected components (BFS).
  std::size_t num_components() const;

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

/// Indicator vector of a vertex set; throws InputError on out-of-range ids.
/// Repeated ids are counted once.
std::vector<char> membership(const Graph& g, std::span<const Vertex> s);

/// mu(S) = sum of degrees over S.
std::uint64_t volume(const Graph& g, std::span<const Vertex> s);

/// |E(S, V \ S)|.
std::uint64_t cut(const Graph& g, std::span<const Vertex> s);

/// phi(S) = cut / volume, exact. Throws InputError for empty S.
Ratio conductance(const Graph& g, std::span<const Vertex> s);

/// mu(A symmetric-difference P).
std::uint64_t sym_diff_volume(const Graph& g, std::span<const Vertex> a,
                              std::span<const Vertex> p);

/// A k-way assignment of vertices to blocks 0..k-1.
///
/// In the default mode the assignment is total and every block is nonempty.
/// Tuple mode additionally allows uncovered vertices (block kUncovered), which
/// models disjoint k-tuples (Z_1, ..., Z_k) that need not cover V.
class Partition {
 public:
  static constexpr int kUncovered = -1;

  /// Empty placeholder (no vertices, no blocks); use the factories below.
  Partition() = default;

  /// Throws InputError if an entry is outside [0, k) (or kUncovered outside
  /// tuple mode) or some block is empty.
  static Partition from_assignment(std::vector<int> assignment, int k, bool tuple_mode = false);

  /// Throws InputError if blocks overlap, contain out-of-range ids, are
  /// empty, or (outside tuple mode) leave a vertex uncovered.
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<Vertex>>& blocks,
                               bool tuple_mode = false);

  int num_blocks() const noexcept { return static_cast<int>(blocks_.size()); }
  std::size_t num_vertices() const noexcept { return assignment_.size(); }
  bool tuple_mode() const noexcept { return tuple_mode_; }

  int block_of(Vertex v) const noexcept { return assignment_[v]; }
  std::span<const int> assignment() const noexcept { return assignment_; }
  const std::vector<Vertex>& block(int i) const noexcept { return blocks_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  std::vector<std::vector<Vertex>> blocks_;
  bool tuple_mode_ = false;
};

/// Cut and volume of every block in one pass over the edges.
struct BlockStats {
  std::vector<std::uint64_t> cut;
  std::vector<std::uint64_t> volume;

  Ratio conductance(int i) const { return {cut[static_cast<std::size_t>(i)], volume[static_cast<std::size_t>(i)]}; }
};

BlockStats block_stats(const Graph& g, const Partition& p);

/// Phi(P) = max_i phi(P_i).
double partition_phi(const Graph& g, const Partition& p);

/// (1/k) sum_i phi(P_i).
double partition_avg_phi(const Graph& g, const Partition& p);

std::vector<double> block_conductances(const Graph& g, const Partition& p);

}  // namespace spectral_part
