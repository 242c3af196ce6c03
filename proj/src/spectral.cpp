#include "spectral_part/spectral.hpp"

#include <cmath>
#include <string>

#include "spectral_part/errors.hpp"
#include "spectral_part/parallel.hpp"

namespace spectral_part {

const char* to_string(EmbeddingKind kind) {
  return kind == EmbeddingKind::exact ? "exact" : "approximate";
}

LaplacianOps::LaplacianOps(const Graph& g, std::size_t dense_threshold)
    : graph_(&g), inv_sqrt_degree_(static_cast<Eigen::Index>(g.num_vertices())), dense_threshold_(dense_threshold) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    inv_sqrt_degree_(v) = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
}

LaplacianOps build_ops(const Graph& g, std::size_t dense_threshold) { return LaplacianOps(g, dense_threshold); }

Vector LaplacianOps::apply_adjacency(const Vector& x) const {
  if (x.size() != static_cast<Eigen::Index>(size())) throw InputError("operator dimension mismatch");
  Vector y(x.size());
  for (Vertex u = 0; u < size(); ++u) {
    double acc = 0.0;
    for (Vertex v : graph_->neighbors(u)) acc += inv_sqrt_degree_(v) * x(v);
    y(u) = inv_sqrt_degree_(u) * acc;
  }
  return y;
}

Vector LaplacianOps::apply_laplacian(const Vector& x) const { return x - apply_adjacency(x); }

Vector LaplacianOps::apply_b(const Vector& x) const { return x + apply_adjacency(x); }

DenseMatrix LaplacianOps::apply_adjacency(const DenseMatrix& x) const {
  if (x.rows() != static_cast<Eigen::Index>(size())) throw InputError("operator dimension mismatch");
  // Row-major scratch so that gathering neighbor rows is contiguous.
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor scaled = inv_sqrt_degree_.asDiagonal() * x;
  RowMajor out(x.rows(), x.cols());
  parallel_for(size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      auto row = out.row(static_cast<Eigen::Index>(u));
      row.setZero();
      for (Vertex v : graph_->neighbors(static_cast<Vertex>(u))) row += scaled.row(v);
      row *= inv_sqrt_degree_(static_cast<Eigen::Index>(u));
    }
  });
  return out;
}

DenseMatrix LaplacianOps::apply_b(const DenseMatrix& x) const { return x + apply_adjacency(x); }

DenseMatrix LaplacianOps::dense_laplacian() const {
  if (size() > dense_threshold_) {
    throw CapacityError("graph has " + std::to_string(size()) + " vertices, above the dense threshold " +
                        std::to_string(dense_threshold_));
  }
  const auto n = static_cast<Eigen::Index>(size());
  DenseMatrix l = DenseMatrix::Identity(n, n);
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : graph_->neighbors(u)) l(u, v) = -inv_sqrt_degree_(u) * inv_sqrt_degree_(v);
  }
  return l;
}

Embedding embedding_from_eigensystem(const Graph& g, const EigenSystem& eig, int k) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (k < 1 || k > n) throw InputError("embedding dimension k must lie in [1, n]");
  if (eig.vectors.rows() != n) throw InputError("eigensystem does not match graph");
  Embedding e;
  e.kind = EmbeddingKind::exact;
  e.basis = eig.vectors.leftCols(k);
  e.weights.resize(n);
  for (Vertex v = 0; v < g.num_vertices(); ++v) e.weights(v) = static_cast<double>(g.degree(v));
  e.coords = e.weights.cwiseSqrt().cwiseInverse().asDiagonal() * e.basis;
  return e;
}

ExactSpectrum exact_embedding(const Graph& g, int k, std::size_t dense_threshold) {
  if (k < 1 || static_cast<std::size_t>(k) > g.num_vertices()) {
    throw InputError("embedding dimension k = " + std::to_string(k) + " must lie in [1, n]");
  }
  LaplacianOps ops(g, dense_threshold);
  ExactSpectrum out;
  out.eigen = sym_eig(ops.dense_laplacian());
  out.embedding = embedding_from_eigensystem(g, out.eigen, k);
  return out;
}

int required_power_steps(std::size_t n, int k, double eps, double delta, double lambda_k, double lambda_k1) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InputError("delta must lie in (0, 1)");
  if (k < 1) throw InputError("k must be >= 1");
  if (!(lambda_k < lambda_k1)) {
    throw GapError("no spectral gap: lambda_k = " + std::to_string(lambda_k) +
                   " is not below lambda_{k+1} = " + std::to_string(lambda_k1));
  }
  const double gamma = (2.0 - lambda_k1) / (2.0 - lambda_k);
  if (!(gamma > 0.0)) return 1;
  const double numerator = std::log(8.0 * static_cast<double>(n) * k / (eps * delta));
  const double steps = std::ceil(numerator / std::log(1.0 / gamma));
  if (!(steps >= 1.0)) return 1;
  if (steps > 1e8) throw GapError("spectral gap too small: would need more than 1e8 power steps");
  return static_cast<int>(steps);
}

Embedding power_embedding(const Graph& g, int k, const PowerParams& params) {
  const std::size_t n = g.num_vertices();
  if (k < 1 || static_cast<std::size_t>(k) > n) throw InputError("embedding dimension k must lie in [1, n]");
  if (params.p < 1) throw InputError("power steps p must be >= 1");
  LaplacianOps ops(g);

  DenseMatrix x = gaussian_matrix(n, static_cast<std::size_t>(k), params.seed);
  for (int step = 1; step < params.p; ++step) {
    x = ops.apply_b(x);
    try {
      x = orthonormalize_columns(x);
    } catch (const NumericError&) {
      throw NumericError("rank collapse in power iteration at step " + std::to_string(step) +
                         "; retry with another seed");
    }
  }
  x = ops.apply_b(x);
  ThinSvd svd = thin_svd(x);
  if (!(svd.singular(k - 1) > tol::rank_collapse) || !(svd.singular(k - 1) > 1e-13 * svd.singular(0))) {
    throw NumericError("rank collapse: sigma_k of B^p S is " + std::to_string(svd.singular(k - 1)) +
                       "; retry with another seed");
  }

  Embedding e;
  e.kind = EmbeddingKind::approximate;
  e.power_steps = params.p;
  e.seed = params.seed;
  e.basis = std::move(svd.u);
  e.weights.resize(static_cast<Eigen::Index>(n));
  for (Vertex v = 0; v < n; ++v) e.weights(v) = static_cast<double>(g.degree(v));
  e.coords = ops.inv_sqrt_degree().asDiagonal() * e.basis;
  return e;
}

double projection_distance(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("projection_distance dimension mismatch");
  // 2k - 2||A^T B||^2 == 2 ||B - A A^T B||^2 for orthonormal A, B; the right
  // side does not cancel catastrophically when the spans nearly agree.
  const DenseMatrix residual = b - a * (a.transpose() * b);
  return std::sqrt(2.0) * residual.norm();
}

double projection_distance(const Embedding& a, const Embedding& b) { return projection_distance(a.basis, b.basis); }

WeightedPoints normalized_weighted_pointset(const Embedding& e) { return {e.coords, e.weights}; }

}  // namespace spectral_part
