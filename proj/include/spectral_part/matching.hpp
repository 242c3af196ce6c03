#pragma once

#include <cstdint>
#include <vector>

#include "spectral_part/graph.hpp"

namespace spectral_part {

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// algorithm, O(k^3)). Returns column[i] assigned to row i.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Result of aligning block labels of `a` to those of `p`.
struct PartitionMatch {
  std::vector<int> permutation;            // block a_i <-> p_{permutation[i]}
  std::vector<std::uint64_t> sym_diff;     // mu(A_i symmetric-difference P_pi(i))
  std::vector<double> relative_sym_diff;   // sym_diff / mu(P_pi(i))
  std::uint64_t total_sym_diff = 0;
  double max_relative_sym_diff = 0.0;
};

/// Permutation minimising sum_i mu(A_i symmetric-difference P_pi(i)).
/// Exhaustive (lexicographically first optimum) for k <= 8, Hungarian above.
PartitionMatch match_partitions(const Graph& g, const Partition& a, const Partition& p);

}  // namespace spectral_part
