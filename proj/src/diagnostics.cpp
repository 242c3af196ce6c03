#include "spectral_part/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "spectral_part/errors.hpp"
#include "spectral_part/matching.hpp"
#include "spectral_part/partition_constants.hpp"

namespace spectral_part {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_reference(const Graph& g, const Partition& p, int k, const char* what) {
  if (p.num_vertices() != g.num_vertices()) {
    throw InputError(std::string(what) + " partition covers " + std::to_string(p.num_vertices()) +
                     " vertices but the graph has " + std::to_string(g.num_vertices()));
  }
  if (p.tuple_mode()) throw InputError(std::string(what) + " partition must cover every vertex");
  if (p.num_blocks() != k) {
    throw InputError(std::string(what) + " partition has " + std::to_string(p.num_blocks()) +
                     " blocks, expected k = " + std::to_string(k));
  }
}

std::string indexed(const char* name, int i) { return std::string(name) + "[" + std::to_string(i) + "]"; }

}  // namespace

const char* to_string(ProxyKind kind) {
  return kind == ProxyKind::planted ? "planted" : "bruteforce-optimal";
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::passed: return "passed";
    case CheckStatus::failed: return "failed";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "unknown";
}

CheckRecord make_check(std::string name, double lhs, double rhs, bool hypothesis_met, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.hypothesis_met = hypothesis_met;
  r.passed = lhs <= rhs + tol::check_slack;
  r.slack = rhs - lhs;
  r.note = std::move(note);
  return r;
}

bool TheoremChecks::any_failed() const {
  return std::any_of(records.begin(), records.end(),
                     [](const CheckRecord& r) { return r.status() == CheckStatus::failed; });
}

CharacteristicVectors characteristic_vectors(const Graph& g, const Partition& p) {
  if (p.num_vertices() != g.num_vertices()) throw InputError("partition does not match the graph");
  const int k = p.num_blocks();
  const auto stats = block_stats(g, p);
  CharacteristicVectors out;
  out.vectors = DenseMatrix::Zero(static_cast<Eigen::Index>(g.num_vertices()), k);
  LaplacianOps ops(g);
  for (int i = 0; i < k; ++i) {
    const auto& block = p.block(i);
    if (block.empty()) throw InputError("block " + std::to_string(i) + " is empty");
    const double scale = 1.0 / std::sqrt(static_cast<double>(stats.volume[static_cast<std::size_t>(i)]));
    for (Vertex v : block) out.vectors(v, i) = std::sqrt(static_cast<double>(g.degree(v))) * scale;
    const Vector col = out.vectors.col(i);
    const double rayleigh = col.dot(ops.apply_laplacian(col)) / col.squaredNorm();
    const double phi = stats.conductance(i).value();
    if (std::abs(rayleigh - phi) > 1e-9) {
      throw NumericError("Rayleigh quotient " + std::to_string(rayleigh) + " of block " + std::to_string(i) +
                         " disagrees with its conductance " + std::to_string(phi));
    }
    out.rayleigh.push_back(rayleigh);
    out.conductance.push_back(phi);
  }
  return out;
}

CoeffMatrices coeff_matrices(const EigenSystem& eig, const DenseMatrix& gbar, int k) {
  if (k < 1 || k > eig.vectors.cols() || gbar.cols() != k || gbar.rows() != eig.vectors.rows()) {
    throw InputError("coefficient matrices: dimension mismatch");
  }
  CoeffMatrices cm;
  cm.f = eig.vectors.leftCols(k).transpose() * gbar;
  Eigen::JacobiSVD<DenseMatrix> svd(cm.f);
  cm.condition = svd.singularValues()(k - 1);
  if (!(cm.condition >= tol::span_condition)) {
    throw SpanCollapseError("span collapse: smallest singular value of F is " + std::to_string(cm.condition));
  }
  cm.b = cm.f.fullPivLu().inverse();
  return cm;
}

DenseMatrix estimation_centers(const CoeffMatrices& cm, std::span<const double> volumes) {
  const auto k = cm.b.rows();
  if (static_cast<Eigen::Index>(volumes.size()) != k) throw InputError("estimation centers: one volume per block");
  DenseMatrix p(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!(volumes[static_cast<std::size_t>(i)] > 0.0)) throw InputError("block volumes must be positive");
    p.row(i) = cm.b.row(i) / std::sqrt(volumes[static_cast<std::size_t>(i)]);
  }
  return p;
}

GapReport gap_report(const Graph& g, int k, const Partition& reference, const EigenSystem& eig) {
  const auto n = g.num_vertices();
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw InputError("gap report needs 1 <= k < n, got k = " + std::to_string(k));
  }
  require_reference(g, reference, k, "reference");
  GapReport r;
  for (int j = 0; j <= k; ++j) r.lambda.push_back(eig.values(j));
  const double lambda_k1 = r.lambda.back();
  if (!(lambda_k1 > tol::zero_eigenvalue)) {
    throw GapError("fewer than k+1 nonzero-gap eigenvalues: lambda_{k+1} = " + std::to_string(lambda_k1));
  }
  if (n <= kBruteforceMaxVertices && k >= 2) {
    const auto constants = bruteforce_partition_constants(g, k);
    r.proxy_kind = ProxyKind::bruteforce_optimal;
    r.rho_avr_proxy = constants.rho_avr;
    r.phi_proxy = constants.rho_hat;
  } else {
    r.proxy_kind = ProxyKind::planted;
    r.rho_avr_proxy = partition_avg_phi(g, reference);
    r.phi_proxy = partition_phi(g, reference);
  }
  r.psi = r.rho_avr_proxy > 0.0 ? lambda_k1 / r.rho_avr_proxy : kInf;
  r.upsilon = r.phi_proxy > 0.0 ? lambda_k1 / r.phi_proxy : kInf;
  return r;
}

GapParameters gap_parameters(double psi, int k) {
  const double k3 = static_cast<double>(k) * k * k;
  GapParameters p;
  p.psi = psi;
  if (std::isfinite(psi)) {
    p.delta_raw = 160000.0 * k3 / psi;
    p.eps_bbt = std::sqrt(1e4 * k3 / psi);
  }
  p.delta = std::min(p.delta_raw, 0.5);
  p.delta_clamped = p.delta_raw > 0.5;
  return p;
}

TheoremChecks run_theorem_checks(const Graph& g, int k, const Partition& planted, const Partition* clustered,
                                 const CheckOptions& options) {
  const ExactSpectrum spectrum = exact_embedding(g, k, options.dense_threshold);
  return run_theorem_checks(g, spectrum, k, planted, clustered, options);
}

TheoremChecks run_theorem_checks(const Graph& g, const ExactSpectrum& spectrum, int k, const Partition& planted,
                                 const Partition* clustered, const CheckOptions& options) {
  if (k < 2) throw InputError("theorem checks need k >= 2");
  require_reference(g, planted, k, "reference");
  if (clustered) require_reference(g, *clustered, k, "clustered");

  const EigenSystem& eig = spectrum.eigen;
  TheoremChecks out;
  out.gap = gap_report(g, k, planted, eig);
  const double kd = k;
  const double lambda_k1 = eig.values(k);
  const double avg_phi = partition_avg_phi(g, planted);
  out.psi = avg_phi > 0.0 ? lambda_k1 / avg_phi : kInf;
  const double psi = out.psi;
  const bool psi_finite = std::isfinite(psi);
  const GapParameters params = gap_parameters(psi, k);
  out.delta_raw = params.delta_raw;
  out.delta = params.delta;
  out.delta_clamped = params.delta_clamped;
  out.eps_bbt = params.eps_bbt;
  const double delta = out.delta;

  const bool h_close = psi > 4.0 * std::pow(kd, 1.5);
  const bool h_bbt = psi > 1e4 * kd * kd * kd;
  const bool h_delta_one = out.delta_raw <= 1.0;
  const bool h_delta_half = out.delta_raw <= 0.5;
  const bool h_ratio = h_delta_half && (out.delta_raw == 0.0 || kd / out.delta_raw >= 1e9);
  const bool h_main = k >= 3 && h_delta_half;
  const std::string clamp_note = out.delta_clamped ? "delta clamped" : "";

  const Embedding embedding = embedding_from_eigensystem(g, eig, k);
  const DenseMatrix& u = embedding.basis;
  const CharacteristicVectors chars = characteristic_vectors(g, planted);
  const DenseMatrix& gbar = chars.vectors;
  const auto stats = block_stats(g, planted);
  std::vector<double> volumes(stats.volume.begin(), stats.volume.end());

  std::optional<CoeffMatrices> cm;
  CoeffMatrices raw;
  raw.f = u.transpose() * gbar;
  try {
    cm = coeff_matrices(eig, gbar, k);
    out.condition = cm->condition;
  } catch (const SpanCollapseError&) {
    if (psi > std::pow(kd, 1.5)) throw;
  }
  const std::string collapse_note = "span collapse: F is singular";

  // (1) projection of gbar_i onto the first k eigenvectors.
  for (int i = 0; i < k; ++i) {
    const Vector fhat = u * raw.f.col(i);
    const double lhs = (gbar.col(i) - fhat).squaredNorm();
    out.records.push_back(make_check(indexed("gbar_fhat_distance", i), lhs, chars.conductance[static_cast<std::size_t>(i)] / lambda_k1, true));
  }

  // (2) eigenvector closeness to ghat_i = sum_j B(j, i) gbar_j.
  const double close_bound = psi_finite ? (1.0 + 3.0 * kd / psi) * kd / psi : 0.0;
  for (int i = 0; i < k; ++i) {
    if (!cm) {
      out.records.push_back(make_check(indexed("f_ghat_distance", i), kNaN, close_bound, false, collapse_note));
      continue;
    }
    const Vector ghat = gbar * cm->b.col(i);
    const double lhs = (u.col(i) - ghat).squaredNorm();
    out.records.push_back(make_check(indexed("f_ghat_distance", i), lhs, close_bound, h_close));
  }

  // (3) rows of B are nearly orthonormal.
  if (cm) {
    const DenseMatrix bbt = cm->b * cm->b.transpose();
    double diag = 0.0, off = 0.0;
    for (int i = 0; i < k; ++i) {
      diag = std::max(diag, std::abs(bbt(i, i) - 1.0));
      for (int j = 0; j < k; ++j) {
        if (i != j) off = std::max(off, std::abs(bbt(i, j)));
      }
    }
    out.records.push_back(make_check("bbt_diagonal", diag, out.eps_bbt, h_bbt));
    out.records.push_back(make_check("bbt_off_diagonal", off, std::sqrt(out.eps_bbt), h_bbt));
  } else {
    out.records.push_back(make_check("bbt_diagonal", kNaN, out.eps_bbt, false, collapse_note));
    out.records.push_back(make_check("bbt_off_diagonal", kNaN, std::sqrt(out.eps_bbt), false, collapse_note));
  }

  // Estimation centers: norms and pairwise separation.
  DenseMatrix centers;
  if (cm) {
    centers = estimation_centers(*cm, volumes);
    double worst_norm = 0.0;
    for (int i = 0; i < k; ++i) {
      worst_norm = std::max(worst_norm, std::abs(centers.row(i).squaredNorm() * volumes[static_cast<std::size_t>(i)] - 1.0));
    }
    out.records.push_back(
        make_check("center_norm", worst_norm, std::sqrt(delta) / 4.0, h_delta_one, clamp_note));
    double best_lhs = 0.0, best_rhs = kInf, best_ratio = kInf;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        const double need = 1.0 / (2.0 * std::min(volumes[static_cast<std::size_t>(i)], volumes[static_cast<std::size_t>(j)]));
        const double have = (centers.row(i) - centers.row(j)).squaredNorm();
        if (have / need < best_ratio) {
          best_ratio = have / need;
          best_lhs = need;
          best_rhs = have;
        }
      }
    }
    out.records.push_back(make_check("center_separation", best_lhs, best_rhs, h_delta_half, clamp_note));
  } else {
    out.records.push_back(make_check("center_norm", kNaN, std::sqrt(delta) / 4.0, false, collapse_note));
    out.records.push_back(make_check("center_separation", kNaN, kNaN, false, collapse_note));
  }

  // (4) k-means cost of the reference partition with the estimation
  // centers, and the optimal cost estimate.
  const WeightedPoints pts = normalized_weighted_pointset(embedding);
  const double cost_bound = psi_finite ? (1.0 + 3.0 * kd / psi) * kd * kd / psi : 0.0;
  if (cm) {
    const double lhs = cost(pts, planted.assignment(), centers);
    out.records.push_back(make_check("reference_cost", lhs, cost_bound, h_close));
  } else {
    out.records.push_back(make_check("reference_cost", kNaN, cost_bound, false, collapse_note));
  }
  out.separation = separation_ratio(pts, k, options.seed, options.restarts);
  const std::string method = std::string("method ") + to_string(out.separation.method);
  out.records.push_back(make_check("optimal_cost", out.separation.delta_k, cost_bound, h_close, method));

  // (5) the (k-1)-means cost stays large, and the k/(k-1) ratio.
  {
    const double lower = 1.0 / 12.0 - (2.0 * delta / 160000.0) / kd;
    std::string note = method;
    if (out.delta_clamped) note += ", " + clamp_note;
    out.records.push_back(make_check("cost_k_minus_1_lower", lower, out.separation.delta_k_minus_1, h_delta_half, note));
    std::string ratio_note = method;
    if (out.separation.degenerate) ratio_note += ", degenerate";
    out.records.push_back(make_check("separation_ratio", out.separation.ratio, 5.0 * kOrssEpsilon * kOrssEpsilon,
                                     h_ratio, ratio_note));
  }

  // (6) a clustering close in cost is close to the reference partition.
  if (clustered) {
    const PartitionMatch match = match_partitions(g, *clustered, planted);
    const auto cstats = block_stats(g, *clustered);
    const double budget = options.alpha * delta / (1e3 * kd);
    for (int i = 0; i < k; ++i) {
      const int j = match.permutation[static_cast<std::size_t>(i)];
      const double mu_p = volumes[static_cast<std::size_t>(j)];
      out.records.push_back(make_check(indexed("misclassified_volume", i),
                                       static_cast<double>(match.sym_diff[static_cast<std::size_t>(i)]),
                                       budget * mu_p, h_main, clamp_note));
    }
    for (int i = 0; i < k; ++i) {
      const int j = match.permutation[static_cast<std::size_t>(i)];
      const double phi_a = cstats.conductance(i).value();
      const double phi_p = stats.conductance(j).value();
      out.records.push_back(make_check(indexed("cluster_conductance", i), phi_a,
                                       (1.0 + 2.0 * budget) * phi_p + 2.0 * budget, h_main, clamp_note));
    }
  }
  return out;
}

}  // namespace spectral_part
