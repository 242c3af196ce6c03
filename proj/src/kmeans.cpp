#include "spectral_part/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spectral_part/errors.hpp"
#include "spectral_part/parallel.hpp"
#include "spectral_part/rng.hpp"

namespace spectral_part {

namespace {

// Samples an index with probability proportional to mass[i] (all >= 0).
std::size_t sample_proportional(const std::vector<double>& mass, CounterRng& rng) {
  double total = 0.0;
  for (double m : mass) total += m;
  const double target = rng.uniform() * total;
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    running += mass[i];
    last_positive = i;
    if (target < running) return i;
  }
  return last_positive;
}

// Nearest center for every point; ties resolve to the lowest center index.
std::vector<int> nearest_centers(const WeightedPoints& pts, const DenseMatrix& centers,
                                 std::vector<double>* best_dist = nullptr) {
  const std::size_t n = pts.size();
  std::vector<int> assignment(n, 0);
  if (best_dist) best_dist->assign(n, 0.0);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto row = pts.coords.row(static_cast<Eigen::Index>(i));
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (Eigen::Index c = 0; c < centers.rows(); ++c) {
        const double d = (row - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = static_cast<int>(c);
        }
      }
      assignment[i] = arg;
      if (best_dist) (*best_dist)[i] = best;
    }
  });
  return assignment;
}

}  // namespace

const char* to_string(SeparationMethod method) {
  return method == SeparationMethod::bruteforce ? "bruteforce" : "heuristic";
}

void WeightedPoints::validate() const {
  if (weights.size() != coords.rows()) throw InputError("weights and coordinates disagree in length");
  if (!coords.allFinite()) throw InputError("point coordinates must be finite");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) > 0.0) || !std::isfinite(weights(i))) throw InputError("point weights must be positive");
  }
}

double cost(const WeightedPoints& pts, std::span<const int> assignment, const DenseMatrix& centers) {
  if (assignment.size() != pts.size()) throw InputError("assignment length does not match point count");
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int c = assignment[i];
    if (c < 0 || c >= centers.rows()) throw InputError("assignment refers to a missing center");
    const auto row = static_cast<Eigen::Index>(i);
    total += pts.weights(row) * (pts.coords.row(row) - centers.row(c)).squaredNorm();
  }
  return total;
}

double cost(const WeightedPoints& pts, const Clustering& c) { return cost(pts, c.assignment, c.centers); }

DenseMatrix weighted_means(const WeightedPoints& pts, std::span<const int> assignment, int k) {
  DenseMatrix sums = DenseMatrix::Zero(k, pts.dim());
  Vector mass = Vector::Zero(k);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    sums.row(assignment[i]) += pts.weights(row) * pts.coords.row(row);
    mass(assignment[i]) += pts.weights(row);
  }
  for (int c = 0; c < k; ++c) {
    if (mass(c) > 0.0) sums.row(c) /= mass(c);
  }
  return sums;
}

double single_cluster_cost(const WeightedPoints& pts) {
  std::vector<int> all(pts.size(), 0);
  return cost(pts, all, weighted_means(pts, all, 1));
}

std::size_t count_distinct_points(const WeightedPoints& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::size_t i) { return pts.coords.row(static_cast<Eigen::Index>(i)); };
  auto less = [&](std::size_t a, std::size_t b) {
    for (int d = 0; d < pts.dim(); ++d) {
      if (row(a)(d) != row(b)(d)) return row(a)(d) < row(b)(d);
    }
    return false;
  };
  std::sort(order.begin(), order.end(), less);
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (less(order[i - 1], order[i])) ++distinct;
  }
  return distinct;
}

Clustering optimal_cost_bruteforce(const WeightedPoints& pts, int k) {
  pts.validate();
  const std::size_t n = pts.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InputError("brute-force k-means needs 1 <= k <= n");
  if (n > 14 && k != 1) throw CapacityError("brute-force k-means is limited to n <= 14");

  if (k == 1) {
    Clustering c;
    c.assignment.assign(n, 0);
    c.centers = weighted_means(pts, c.assignment, 1);
    c.cost = cost(pts, c);
    return c;
  }

  // Coordinates relative to the weighted centroid keep the sufficient
  // statistics small and the per-block cost formula well conditioned.
  std::vector<int> zeros(n, 0);
  const Eigen::RowVectorXd centroid = weighted_means(pts, zeros, 1).row(0);
  const DenseMatrix x = pts.coords.rowwise() - centroid;
  Vector sq(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) sq(i) = x.row(i).squaredNorm();

  DenseMatrix sum = DenseMatrix::Zero(k, pts.dim());
  Vector mass = Vector::Zero(k);
  Vector quad = Vector::Zero(k);
  std::vector<int> current(n, 0), best(n, 0);
  double best_cost = std::numeric_limits<double>::infinity();

  auto block_cost = [&](int b) {
    return mass(b) > 0.0 ? quad(b) - sum.row(b).squaredNorm() / mass(b) : 0.0;
  };
  auto recurse = [&](auto&& self, std::size_t i, int used) -> void {
    if (i == n) {
      double total = 0.0;
      for (int b = 0; b < k; ++b) total += block_cost(b);
      if (total < best_cost) {
        best_cost = total;
        best = current;
      }
      return;
    }
    const auto row = static_cast<Eigen::Index>(i);
    const double w = pts.weights(row);
    const int limit = std::min(used + 1, k);
    for (int b = 0; b < limit; ++b) {
      const int next_used = std::max(used, b + 1);
      if (static_cast<int>(n - i - 1) < k - next_used) continue;
      current[i] = b;
      sum.row(b) += w * x.row(row);
      mass(b) += w;
      quad(b) += w * sq(row);
      self(self, i + 1, next_used);
      sum.row(b) -= w * x.row(row);
      mass(b) -= w;
      quad(b) -= w * sq(row);
    }
  };
  recurse(recurse, 0, 0);

  Clustering c;
  c.assignment = best;
  c.centers = weighted_means(pts, c.assignment, k);
  c.cost = cost(pts, c);
  return c;
}

Clustering lloyd_step(const WeightedPoints& pts, const Clustering& c) {
  const int k = c.k();
  Clustering next;
  next.assignment = nearest_centers(pts, c.centers);
  std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
  for (int a : next.assignment) ++count[static_cast<std::size_t>(a)];
  next.centers = weighted_means(pts, next.assignment, k);

  for (int empty = 0; empty < k; ++empty) {
    if (count[static_cast<std::size_t>(empty)] != 0) continue;
    std::size_t donor = pts.size();
    double worst = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const int a = next.assignment[i];
      if (count[static_cast<std::size_t>(a)] < 2) continue;
      const auto row = static_cast<Eigen::Index>(i);
      const double contribution = pts.weights(row) * (pts.coords.row(row) - next.centers.row(a)).squaredNorm();
      if (contribution > worst) {
        worst = contribution;
        donor = i;
      }
    }
    if (donor == pts.size()) throw DegenerateError("cannot repair empty cluster: every cluster is a singleton");
    const int from = next.assignment[donor];
    --count[static_cast<std::size_t>(from)];
    ++count[static_cast<std::size_t>(empty)];
    next.assignment[donor] = empty;
    next.centers = weighted_means(pts, next.assignment, k);
  }
  next.cost = cost(pts, next);
  return next;
}

Clustering lloyd(const WeightedPoints& pts, Clustering c, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    Clustering next = lloyd_step(pts, c);
    const bool stable = next.assignment == c.assignment;
    c = std::move(next);
    if (stable) break;
  }
  return c;
}

Clustering orss_kmeans(const WeightedPoints& pts, int k, std::uint64_t seed) {
  pts.validate();
  const std::size_t n = pts.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InputError("k-means needs 1 <= k <= n");
  if (count_distinct_points(pts) < static_cast<std::size_t>(k)) {
    throw DegenerateError("fewer than k distinct points");
  }
  CounterRng rng(seed, StreamPurpose::kmeans_seeding);

  std::vector<int> zeros(n, 0);
  const Eigen::RowVectorXd centroid = weighted_means(pts, zeros, 1).row(0);
  const double total_weight = pts.total_weight();
  std::vector<double> to_centroid(n);
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    to_centroid[i] = (pts.coords.row(row) - centroid).squaredNorm();
    spread += pts.weights(row) * to_centroid[i];
  }

  std::vector<std::size_t> chosen;
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass[i] = pts.weights(static_cast<Eigen::Index>(i)) * (spread + total_weight * to_centroid[i]);
  }
  chosen.push_back(sample_proportional(mass, rng));

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(chosen.size()) < k) {
    const auto last = pts.coords.row(static_cast<Eigen::Index>(chosen.back()));
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      nearest[i] = std::min(nearest[i], (pts.coords.row(row) - last).squaredNorm());
      mass[i] = pts.weights(row) * nearest[i];
    }
    chosen.push_back(sample_proportional(mass, rng));
  }

  DenseMatrix seeds(k, pts.dim());
  for (int c = 0; c < k; ++c) seeds.row(c) = pts.coords.row(static_cast<Eigen::Index>(chosen[static_cast<std::size_t>(c)]));

  // Ball step: each center moves to the weighted mean of the points within a
  // third of the distance to its nearest other center.
  DenseMatrix centers = seeds;
  for (int c = 0; c < k; ++c) {
    double gap = std::numeric_limits<double>::infinity();
    for (int o = 0; o < k; ++o) {
      if (o != c) gap = std::min(gap, (seeds.row(c) - seeds.row(o)).squaredNorm());
    }
    const double radius_sq = gap / 9.0;
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(pts.dim());
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      if ((pts.coords.row(row) - seeds.row(c)).squaredNorm() <= radius_sq) {
        acc += pts.weights(row) * pts.coords.row(row);
        w += pts.weights(row);
      }
    }
    if (w > 0.0) centers.row(c) = acc / w;
  }

  Clustering c;
  c.centers = centers;
  c.assignment = nearest_centers(pts, centers);
  c.cost = cost(pts, c);
  return lloyd(pts, std::move(c));
}

Clustering best_of_orss(const WeightedPoints& pts, int k, std::uint64_t seed, int restarts) {
  if (restarts < 1) throw InputError("restarts must be >= 1");
  Clustering best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t run_seed = CounterRng(seed, StreamPurpose::kmeans_restart, static_cast<std::uint64_t>(r)).at(0);
    Clustering c = orss_kmeans(pts, k, run_seed);
    if (!have || c.cost < best.cost) {
      best = std::move(c);
      have = true;
    }
  }
  return best;
}

SeparationEstimate separation_ratio(const WeightedPoints& pts, int k, std::uint64_t seed, int restarts) {
  pts.validate();
  if (k < 2) throw InputError("separation ratio needs k >= 2");
  const std::size_t n = pts.size();
  if (static_cast<std::size_t>(k) > n) throw InputError("separation ratio needs k <= n");
  SeparationEstimate est;
  const std::size_t distinct = count_distinct_points(pts);

  auto delta = [&](int kk) -> double {
    if (kk == 1) return single_cluster_cost(pts);
    if (distinct <= static_cast<std::size_t>(kk)) return 0.0;
    if (n <= 12) return optimal_cost_bruteforce(pts, kk).cost;
    return best_of_orss(pts, kk, seed, restarts).cost;
  };
  est.method = n <= 12 ? SeparationMethod::bruteforce : SeparationMethod::heuristic;
  est.delta_k = delta(k);
  est.delta_k_minus_1 = delta(k - 1);
  if (!(est.delta_k_minus_1 > 0.0)) {
    est.degenerate = true;
    est.ratio = 0.0;
  } else {
    est.ratio = est.delta_k / est.delta_k_minus_1;
  }
  return est;
}

}  // namespace spectral_part
