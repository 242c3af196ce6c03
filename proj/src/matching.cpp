#include "spectral_part/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "spectral_part/errors.hpp"

namespace spectral_part {

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t k = cost.size();
  for (const auto& row : cost) {
    if (row.size() != k) throw InputError("assignment cost matrix must be square");
  }
  if (k == 0) return {};
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Potentials u (rows), v (columns); way[] stores the augmenting path.
  // 1-based with column 0 as the virtual start.
  std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
  std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
  for (std::size_t row = 1; row <= k; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<char> used(k + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= k; ++col) {
        if (used[col]) continue;
        const double reduced = cost[row0 - 1][col - 1] - u[row0] - v[col];
        if (reduced < minv[col]) {
          minv[col] = reduced;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= k; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(k, -1);
  for (std::size_t col = 1; col <= k; ++col) assignment[match[col] - 1] = static_cast<int>(col - 1);
  return assignment;
}

PartitionMatch match_partitions(const Graph& g, const Partition& a, const Partition& p) {
  if (a.num_blocks() != p.num_blocks()) {
    throw InputError("cannot match a " + std::to_string(a.num_blocks()) + "-block partition against a " +
                     std::to_string(p.num_blocks()) + "-block partition");
  }
  if (a.num_vertices() != g.num_vertices() || p.num_vertices() != g.num_vertices()) {
    throw InputError("partition size does not match graph");
  }
  const auto k = static_cast<std::size_t>(a.num_blocks());
  std::vector<std::uint64_t> vol_a(k, 0), vol_p(k, 0);
  std::vector<std::vector<std::uint64_t>> overlap(k, std::vector<std::uint64_t>(k, 0));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const int ba = a.block_of(v);
    const int bp = p.block_of(v);
    const auto d = g.degree(v);
    if (ba >= 0) vol_a[static_cast<std::size_t>(ba)] += d;
    if (bp >= 0) vol_p[static_cast<std::size_t>(bp)] += d;
    if (ba >= 0 && bp >= 0) overlap[static_cast<std::size_t>(ba)][static_cast<std::size_t>(bp)] += d;
  }
  auto sym = [&](std::size_t i, std::size_t j) {
    return vol_a[i] + vol_p[j] - 2 * overlap[i][j];
  };

  std::vector<int> best(k);
  if (k <= 8) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best_total = std::numeric_limits<std::uint64_t>::max();
    do {
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < k; ++i) total += sym(i, static_cast<std::size_t>(perm[i]));
      if (total < best_total) {
        best_total = total;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  } else {
    std::vector<std::vector<double>> cost(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) cost[i][j] = static_cast<double>(sym(i, j));
    }
    best = min_cost_assignment(cost);
  }

  PartitionMatch result;
  result.permutation = best;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(best[i]);
    const auto s = sym(i, j);
    result.sym_diff.push_back(s);
    result.relative_sym_diff.push_back(static_cast<double>(s) / static_cast<double>(vol_p[j]));
    result.total_sym_diff += s;
    result.max_relative_sym_diff = std::max(result.max_relative_sym_diff, result.relative_sym_diff.back());
  }
  return result;
}

}  // namespace spectral_part
