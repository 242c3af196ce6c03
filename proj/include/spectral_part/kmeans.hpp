#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spectral_part/linalg.hpp"

namespace spectral_part {

/// n points in R^dim, each with a positive weight (its multiplicity).
struct WeightedPoints {
  DenseMatrix coords;  // n x dim, one point per row
  Vector weights;      // n, all > 0

  std::size_t size() const noexcept { return static_cast<std::size_t>(coords.rows()); }
  int dim() const noexcept { return static_cast<int>(coords.cols()); }
  double total_weight() const { return weights.sum(); }

  /// Throws InputError on shape mismatch, non-finite coordinates or
  /// non-positive weights.
  void validate() const;
};

struct Clustering {
  std::vector<int> assignment;  // point -> cluster in [0, k)
  DenseMatrix centers;          // k x dim
  double cost = 0.0;

  int k() const noexcept { return static_cast<int>(centers.rows()); }
};

/// sum_i sum_{x in A_i} w_x ||x - c_i||^2.
double cost(const WeightedPoints& pts, std::span<const int> assignment, const DenseMatrix& centers);
double cost(const WeightedPoints& pts, const Clustering& c);

/// Weighted mean of every cluster; rows of empty clusters are left zero.
DenseMatrix weighted_means(const WeightedPoints& pts, std::span<const int> assignment, int k);

/// Delta_1: weighted variance around the weighted centroid.
double single_cluster_cost(const WeightedPoints& pts);

/// Exact Delta_k by enumerating every split into exactly k nonempty
/// clusters (restricted-growth strings) with weighted-mean centers.
/// Throws CapacityError when n > 14 (unless k = 1) and InputError if k > n.
Clustering optimal_cost_bruteforce(const WeightedPoints& pts, int k);

/// One Lloyd iteration: nearest-center reassignment (ties -> lowest index)
/// and weighted-mean update. A cluster left empty is re-seeded at the point
/// with the largest w_x ||x - c(x)||^2 among clusters with >= 2 members.
/// Cost never increases.
Clustering lloyd_step(const WeightedPoints& pts, const Clustering& c);

/// Lloyd iterations until the assignment is stable or max_iter is reached.
Clustering lloyd(const WeightedPoints& pts, Clustering c, int max_iter = 100);

/// Seeding + ball-Lloyd k-means in the style of Ostrovsky, Rabani, Schulman
/// and Swamy, adapted to weights:
///  1. the first center x is drawn with probability proportional to
///     w_x (Delta_1 + W ||x - mu||^2) (pair sampling marginal), the second
///     proportional to w_y ||y - c_1||^2, later ones proportional to
///     w_x min_j ||x - c_j||^2;
///  2. every center moves to the weighted mean of the points within a third
///     of the distance to its nearest other center;
///  3. Lloyd iterations to a fixed point.
/// Throws DegenerateError if there are fewer than k distinct points.
Clustering orss_kmeans(const WeightedPoints& pts, int k, std::uint64_t seed);

/// Cheapest of `restarts` independent orss_kmeans runs (restart r uses the
/// kmeans_restart sub-stream r of `seed`).
Clustering best_of_orss(const WeightedPoints& pts, int k, std::uint64_t seed, int restarts);

enum class SeparationMethod { bruteforce, heuristic };

const char* to_string(SeparationMethod method);

struct SeparationEstimate {
  double ratio = 0.0;            // Delta_k / Delta_{k-1}
  double delta_k = 0.0;
  double delta_k_minus_1 = 0.0;
  SeparationMethod method = SeparationMethod::bruteforce;
  bool degenerate = false;       // Delta_{k-1} == 0 (ratio reported as 0)
};

/// Delta_k / Delta_{k-1}: exact by brute force when n <= 12, otherwise from
/// best-of-`restarts` orss_kmeans for both k and k-1 (Delta_1 is always
/// exact). The heuristic values are upper bounds on the true costs.
SeparationEstimate separation_ratio(const WeightedPoints& pts, int k, std::uint64_t seed, int restarts = 20);

/// Number of pairwise distinct rows (exact comparison).
std::size_t count_distinct_points(const WeightedPoints& pts);

}  // namespace spectral_part
