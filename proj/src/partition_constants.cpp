#include "spectral_part/partition_constants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "spectral_part/errors.hpp"
#include "spectral_part/tolerances.hpp"

namespace spectral_part {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// cut, volume and conductance of every vertex subset, indexed by bitmask.
struct SubsetTable {
  std::size_t n = 0;
  std::vector<std::uint32_t> adj;
  std::vector<std::uint64_t> cut;
  std::vector<std::uint64_t> vol;
  std::vector<double> phi;

  explicit SubsetTable(const Graph& g) : n(g.num_vertices()), adj(n, 0) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v : g.neighbors(u)) adj[u] |= 1u << v;
    }
    const std::size_t full = std::size_t{1} << n;
    cut.assign(full, 0);
    vol.assign(full, 0);
    phi.assign(full, kInf);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const int v = std::countr_zero(mask);
      const std::uint32_t rest = mask & (mask - 1);
      const auto d = static_cast<std::uint64_t>(std::popcount(adj[v]));
      const auto inside = static_cast<std::uint64_t>(std::popcount(adj[v] & rest));
      vol[mask] = vol[rest] + d;
      cut[mask] = cut[rest] + d - 2 * inside;
      phi[mask] = static_cast<double>(cut[mask]) / static_cast<double>(vol[mask]);
    }
  }

  std::uint64_t edges_between(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t total = 0;
    for (std::uint32_t rest = a; rest; rest &= rest - 1) {
      total += static_cast<std::uint64_t>(std::popcount(adj[std::countr_zero(rest)] & b));
    }
    return total;
  }
};

std::vector<int> assignment_from_masks(std::size_t n, const std::vector<std::uint32_t>& blocks) {
  std::vector<int> assignment(n, Partition::kUncovered);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::uint32_t rest = blocks[i]; rest; rest &= rest - 1) {
      assignment[static_cast<std::size_t>(std::countr_zero(rest))] = static_cast<int>(i);
    }
  }
  return assignment;
}

// Blocks in the canonical order (sorted by lowest vertex).
std::vector<std::uint32_t> sorted_blocks(std::vector<std::uint32_t> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](std::uint32_t a, std::uint32_t b) { return std::countr_zero(a) < std::countr_zero(b); });
  return blocks;
}

void check_k(const Graph& g, int k, std::size_t limit) {
  if (g.num_vertices() > limit) {
    throw CapacityError("exhaustive enumeration supports at most " + std::to_string(limit) +
                        " vertices, graph has " + std::to_string(g.num_vertices()));
  }
  if (k < 2 || static_cast<std::size_t>(k) > g.num_vertices()) {
    throw InputError("k = " + std::to_string(k) + " must lie in [2, n]");
  }
}

// Partition DP: best[j][mask] combining block values with `combine`.
// Each split peels off the block holding the lowest vertex of mask.
template <class Leaf, class Combine>
void partition_dp(const SubsetTable& t, int k, Leaf leaf, Combine combine, std::vector<std::vector<double>>& best,
                  std::vector<std::vector<std::uint32_t>>& choice) {
  const std::size_t full = std::size_t{1} << t.n;
  best.assign(static_cast<std::size_t>(k) + 1, std::vector<double>(full, kInf));
  choice.assign(static_cast<std::size_t>(k) + 1, std::vector<std::uint32_t>(full, 0));
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    best[1][mask] = leaf(mask);
    choice[1][mask] = mask;
  }
  for (int j = 2; j <= k; ++j) {
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      if (std::popcount(mask) < j) continue;
      const std::uint32_t low = mask & (~mask + 1);
      const std::uint32_t rest = mask ^ low;
      double value = kInf;
      std::uint32_t pick = 0;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint32_t s = sub | low;
        if (s != mask) {
          const double candidate = combine(leaf(s), best[static_cast<std::size_t>(j - 1)][mask ^ s]);
          if (candidate < value) {
            value = candidate;
            pick = s;
          }
        }
        if (sub == 0) break;
      }
      best[static_cast<std::size_t>(j)][mask] = value;
      choice[static_cast<std::size_t>(j)][mask] = pick;
    }
  }
}

std::vector<std::uint32_t> unwind(const std::vector<std::vector<std::uint32_t>>& choice, int k, std::uint32_t mask) {
  std::vector<std::uint32_t> blocks;
  for (int j = k; j >= 1; --j) {
    const std::uint32_t s = choice[static_cast<std::size_t>(j)][mask];
    blocks.push_back(s);
    mask ^= s;
  }
  return blocks;
}

}  // namespace

PartitionConstants bruteforce_partition_constants(const Graph& g, int k) {
  check_k(g, k, kBruteforceMaxVertices);
  const SubsetTable t(g);
  const std::size_t n = t.n;
  const auto full_mask = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);
  const auto max_combine = [](double a, double b) { return std::max(a, b); };

  PartitionConstants out;
  out.k = k;

  std::vector<std::vector<double>> best;
  std::vector<std::vector<std::uint32_t>> choice;
  partition_dp(t, k, [&](std::uint32_t s) { return t.phi[s]; }, max_combine, best, choice);
  out.rho_hat = best[static_cast<std::size_t>(k)][full_mask];

  // Tuples need not cover V: the lowest vertex of mask is either skipped or
  // starts a block.
  {
    const std::size_t full = std::size_t{1} << n;
    std::vector<std::vector<double>> tup(static_cast<std::size_t>(k) + 1, std::vector<double>(full, kInf));
    std::vector<std::vector<std::uint32_t>> pick(static_cast<std::size_t>(k) + 1,
                                                 std::vector<std::uint32_t>(full, 0));
    std::fill(tup[0].begin(), tup[0].end(), 0.0);
    for (int j = 1; j <= k; ++j) {
      auto& row = tup[static_cast<std::size_t>(j)];
      const auto& prev = tup[static_cast<std::size_t>(j - 1)];
      for (std::uint32_t mask = 1; mask < full; ++mask) {
        const std::uint32_t low = mask & (~mask + 1);
        const std::uint32_t rest = mask ^ low;
        double value = row[rest];
        std::uint32_t chosen = 0;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
          const std::uint32_t s = sub | low;
          const double candidate = std::max(t.phi[s], prev[mask ^ s]);
          if (candidate < value) {
            value = candidate;
            chosen = s;
          }
          if (sub == 0) break;
        }
        row[mask] = value;
        pick[static_cast<std::size_t>(j)][mask] = chosen;
      }
    }
    out.rho = tup[static_cast<std::size_t>(k)][full_mask];
    std::vector<std::uint32_t> blocks;
    std::uint32_t mask = full_mask;
    int j = k;
    while (j > 0) {
      const std::uint32_t s = pick[static_cast<std::size_t>(j)][mask];
      if (s == 0) {
        mask &= mask - 1;
        continue;
      }
      blocks.push_back(s);
      mask ^= s;
      --j;
    }
    out.tuple_witness = Partition::from_assignment(assignment_from_masks(n, sorted_blocks(blocks)), k, true);
  }

  const double threshold = out.rho_hat + tol::phi_tie;
  partition_dp(
      t, k, [&](std::uint32_t s) { return t.phi[s] <= threshold ? t.phi[s] : kInf; },
      [](double a, double b) { return a + b; }, best, choice);
  out.rho_avr = best[static_cast<std::size_t>(k)][full_mask] / k;
  out.optimal = Partition::from_assignment(
      assignment_from_masks(n, sorted_blocks(unwind(choice, k, full_mask))), k);
  return out;
}

InterConnection inter_connection(const Graph& g, int k) {
  check_k(g, k, kInterConnectionMaxVertices);
  const SubsetTable t(g);
  const std::size_t n = t.n;
  const auto full_mask = static_cast<std::uint32_t>((std::size_t{1} << n) - 1);

  InterConnection out;
  out.k = k;
  out.rho_k = bruteforce_partition_constants(g, k).rho;
  const double tie = out.rho_k + tol::phi_tie;

  std::vector<std::uint32_t> candidates;
  for (std::uint32_t s = 1; s <= full_mask; ++s) {
    if (t.phi[s] <= tie) candidates.push_back(s);
  }

  double best_ic = kInf;
  double best_avg = kInf;
  std::vector<std::uint32_t> best_p, best_z;
  bool defined = false;

  std::vector<std::uint32_t> z;
  std::vector<std::uint32_t> p(static_cast<std::size_t>(k));
  std::vector<int> digits;

  // Every compatible partition of one optimal tuple. Returns false once a
  // partition with max phi <= rho(k) shows the instance is degenerate.
  const auto scan_tuple = [&]() -> bool {
    ++out.optimal_tuples;
    std::uint32_t covered = 0;
    for (std::uint32_t s : z) covered |= s;
    std::vector<int> free;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(covered >> v & 1u)) free.push_back(static_cast<int>(v));
    }
    digits.assign(free.size(), 0);
    while (true) {
      for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
      for (std::size_t f = 0; f < free.size(); ++f) {
        p[static_cast<std::size_t>(digits[f])] |= 1u << free[f];
      }
      ++out.compatible_partitions;
      double phi_max = 0.0, phi_sum = 0.0;
      for (std::uint32_t s : p) {
        phi_max = std::max(phi_max, t.phi[s]);
        phi_sum += t.phi[s];
      }
      if (phi_max <= tie) return false;

      double ic = -kInf;
      bool any = false;
      for (int i = 0; i < k; ++i) {
        const std::uint32_t pi = p[static_cast<std::size_t>(i)];
        const std::uint32_t zi = z[static_cast<std::size_t>(i)];
        const std::uint32_t si = pi & ~zi;
        if (si == 0 || t.cut[pi] == 0) continue;
        const double num = static_cast<double>(t.edges_between(si, full_mask & ~pi)) -
                           static_cast<double>(t.edges_between(si, zi));
        ic = std::max(ic, num / static_cast<double>(t.cut[pi]));
        any = true;
      }
      if (any) {
        const double avg = phi_sum / k;
        const bool better = ic < best_ic - tol::phi_tie ||
                            (std::abs(ic - best_ic) <= tol::phi_tie && avg < best_avg - tol::phi_tie);
        if (!defined || better) {
          best_ic = ic;
          best_avg = avg;
          best_p = p;
          best_z = z;
          defined = true;
        }
      }

      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == k) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
    return true;
  };

  // Unordered tuples of disjoint candidates, blocks in order of lowest vertex.
  bool degenerate = false;
  const auto extend = [&](auto&& self, std::size_t from, std::uint32_t used) -> void {
    if (degenerate) return;
    if (z.size() == static_cast<std::size_t>(k)) {
      if (!scan_tuple()) degenerate = true;
      return;
    }
    for (std::size_t c = from; c < candidates.size() && !degenerate; ++c) {
      const std::uint32_t s = candidates[c];
      if (s & used) continue;
      if (!z.empty() && std::countr_zero(s) <= std::countr_zero(z.back())) continue;
      z.push_back(s);
      self(self, 0, used | s);
      z.pop_back();
    }
  };
  extend(extend, 0, 0);

  if (degenerate || !defined) {
    out.degenerate = true;
    return out;
  }
  out.rho_p = best_ic;
  out.kappa = best_ic < 1.0 ? 1.0 / (1.0 - best_ic) : kInf;
  out.rho_tilde_avr = best_avg;
  out.witness = Partition::from_assignment(assignment_from_masks(n, best_p), k);
  out.witness_tuple = Partition::from_assignment(assignment_from_masks(n, best_z), k, true);
  return out;
}

}  // namespace spectral_part
