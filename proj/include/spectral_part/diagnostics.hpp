#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectral_part/graph.hpp"
#include "spectral_part/kmeans.hpp"
#include "spectral_part/linalg.hpp"
#include "spectral_part/spectral.hpp"
#include "spectral_part/tolerances.hpp"

namespace spectral_part {

/// Degree-normalised block indicators gbar_i = D^{1/2} chi_{P_i} / ||.||.
struct CharacteristicVectors {
  DenseMatrix vectors;              // n x k, column i is gbar_i
  std::vector<double> rayleigh;     // R(gbar_i) computed through L
  std::vector<double> conductance;  // phi(P_i)
};

/// Throws NumericError if some Rayleigh quotient differs from phi(P_i) by
/// more than 1e-9 (an operator bug, not a property of the graph).
CharacteristicVectors characteristic_vectors(const Graph& g, const Partition& p);

/// F(j, i) = <gbar_i, f_j> over the first k eigenvectors and B = F^{-1},
/// so that f_i = sum_j B(j, i) fhat_j.
struct CoeffMatrices {
  DenseMatrix f;
  DenseMatrix b;
  double condition = 0.0;  // smallest singular value of F
};

/// Throws SpanCollapseError when the smallest singular value of F is below
/// 1e-8 (the indicator projections do not span the eigenspace).
CoeffMatrices coeff_matrices(const EigenSystem& eig, const DenseMatrix& gbar, int k);

/// Row i is p^(i) = B(i, :) / sqrt(mu(P_i)).
DenseMatrix estimation_centers(const CoeffMatrices& cm, std::span<const double> volumes);

enum class ProxyKind { planted, bruteforce_optimal };

const char* to_string(ProxyKind kind);

struct GapReport {
  std::vector<double> lambda;   // lambda_1 .. lambda_{k+1}
  double rho_avr_proxy = 0.0;
  double phi_proxy = 0.0;
  double psi = 0.0;             // lambda_{k+1} / rho_avr_proxy, +inf if the proxy is 0
  double upsilon = 0.0;         // lambda_{k+1} / phi_proxy
  ProxyKind proxy_kind = ProxyKind::planted;
};

/// With n <= 12 the proxies are the exact minimal average conductance and
/// partition constant; otherwise they come from `reference`, which makes psi
/// a lower bound on the true value. Throws GapError if lambda_{k+1} is zero
/// and InputError unless k < n.
GapReport gap_report(const Graph& g, int k, const Partition& reference, const EigenSystem& eig);

enum class CheckStatus { passed, failed, not_applicable };

const char* to_string(CheckStatus status);

struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool hypothesis_met = false;
  bool passed = false;   // lhs <= rhs + 1e-9
  double slack = 0.0;    // rhs - lhs
  std::string note;

  CheckStatus status() const noexcept {
    if (!hypothesis_met) return CheckStatus::not_applicable;
    return passed ? CheckStatus::passed : CheckStatus::failed;
  }
};

CheckRecord make_check(std::string name, double lhs, double rhs, bool hypothesis_met, std::string note = {});

struct CheckOptions {
  double alpha = 1.1;          // approximation factor assumed for `clustered`
  std::uint64_t seed = 0;      // k-means restarts for the cost estimates
  int restarts = 20;
  std::size_t dense_threshold = tol::default_dense_threshold;
};

inline constexpr double kOrssEpsilon = 6e-7;

/// Quantities derived from psi: delta_raw = 20^4 k^3 / psi, delta clamped to
/// (0, 1/2], and eps_bbt = sqrt(10^4 k^3 / psi). psi = +inf gives zeros.
struct GapParameters {
  double psi = 0.0;
  double delta_raw = 0.0;
  double delta = 0.0;
  bool delta_clamped = false;
  double eps_bbt = 0.0;
};

GapParameters gap_parameters(double psi, int k);

struct TheoremChecks {
  GapReport gap;
  double psi = 0.0;            // lambda_{k+1} / average phi of the reference partition
  double delta_raw = 0.0;      // 20^4 k^3 / psi
  double delta = 0.0;          // delta_raw clamped to (0, 1/2]
  bool delta_clamped = false;
  double eps_bbt = 0.0;        // sqrt(10^4 k^3 / psi)
  double condition = 0.0;      // sigma_min(F); 0 if the span collapsed
  SeparationEstimate separation;
  std::vector<CheckRecord> records;

  bool any_failed() const;
};

/// Evaluates every inequality for the reference partition `planted` (and
/// `clustered`, if given) on the exact embedding. Bounds depending on the
/// gap use psi of `planted` itself. Records whose hypothesis fails are
/// reported as not applicable. A collapsed span with psi > k^{3/2} is
/// rethrown as SpanCollapseError; below that threshold the records that need
/// B are marked not applicable instead.
TheoremChecks run_theorem_checks(const Graph& g, int k, const Partition& planted, const Partition* clustered,
                                 const CheckOptions& options = {});
TheoremChecks run_theorem_checks(const Graph& g, const ExactSpectrum& spectrum, int k, const Partition& planted,
                                 const Partition* clustered, const CheckOptions& options = {});

}  // namespace spectral_part
