#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "spectral_part/graph.hpp"
#include "spectral_part/kmeans.hpp"
#include "spectral_part/linalg.hpp"
#include "spectral_part/tolerances.hpp"

namespace spectral_part {

/// Matrix-free normalized operators of a graph:
///   A_norm = D^{-1/2} A D^{-1/2},  L = I - A_norm,  B = I + A_norm.
/// Holds a reference to the graph, which must outlive it.
class LaplacianOps {
 public:
  explicit LaplacianOps(const Graph& g, std::size_t dense_threshold = tol::default_dense_threshold);

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t size() const noexcept { return graph_->num_vertices(); }
  const Vector& inv_sqrt_degree() const noexcept { return inv_sqrt_degree_; }

  Vector apply_adjacency(const Vector& x) const;
  Vector apply_laplacian(const Vector& x) const;
  Vector apply_b(const Vector& x) const;

  /// Column-wise B X; rows computed independently (thread-count invariant).
  DenseMatrix apply_b(const DenseMatrix& x) const;

  /// Dense L; throws CapacityError above the dense threshold.
  DenseMatrix dense_laplacian() const;

 private:
  DenseMatrix apply_adjacency(const DenseMatrix& x) const;

  const Graph* graph_;
  Vector inv_sqrt_degree_;
  std::size_t dense_threshold_;
};

LaplacianOps build_ops(const Graph& g, std::size_t dense_threshold = tol::default_dense_threshold);

enum class EmbeddingKind { exact, approximate };

const char* to_string(EmbeddingKind kind);

/// Spectral embedding of the vertices.
///
/// `basis` is the n x k orthonormal matrix (U_k for the exact embedding, the
/// left singular vectors of B^p S for the power method). Row u of `coords`
/// is F(u) = basis.row(u) / sqrt(d_u), and `weights` holds d_u, so the pair
/// (coords, weights) is the degree-weighted k-means instance.
struct Embedding {
  EmbeddingKind kind = EmbeddingKind::exact;
  int power_steps = 0;    // p, approximate only
  std::uint64_t seed = 0; // approximate only
  DenseMatrix basis;
  DenseMatrix coords;
  Vector weights;

  int dim() const noexcept { return static_cast<int>(coords.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(coords.rows()); }
};

struct ExactSpectrum {
  Embedding embedding;
  EigenSystem eigen;  // full spectrum of L, ascending
};

/// Dense eigensolve of L and the embedding from its first k eigenvectors.
/// Throws InputError unless 1 <= k <= n, CapacityError above the threshold.
ExactSpectrum exact_embedding(const Graph& g, int k, std::size_t dense_threshold = tol::default_dense_threshold);

/// Embedding from an already computed eigensystem of L.
Embedding embedding_from_eigensystem(const Graph& g, const EigenSystem& eig, int k);

/// p = ceil(ln(8nk / (eps delta)) / ln(1/gamma_k)) with
/// gamma_k = (2 - lambda_{k+1}) / (2 - lambda_k), clamped below at 1.
/// Throws GapError unless lambda_k < lambda_{k+1}; InputError for eps or
/// delta outside (0, 1).
int required_power_steps(std::size_t n, int k, double eps, double delta, double lambda_k, double lambda_k1);

struct PowerParams {
  int p = 1;
  std::uint64_t seed = 0;
  double eps = 0.01;
  double delta = 0.1;
};

/// Power-method embedding: S = gaussian_matrix(n, k, seed), p applications
/// of B with re-orthonormalization between them, then the thin SVD of the
/// last product. Throws NumericError on rank collapse (retry another seed).
Embedding power_embedding(const Graph& g, int k, const PowerParams& params);

/// ||A A^T - B B^T||_F for n x k orthonormal A, B without forming n x n
/// projectors: sqrt(2k - 2 ||A^T B||_F^2), evaluated as
/// sqrt(2) ||B - A (A^T B)||_F.
double projection_distance(const DenseMatrix& a, const DenseMatrix& b);
double projection_distance(const Embedding& a, const Embedding& b);

/// The weighted point set: n points F(u) with weight d_u (total weight 2m),
/// standing in for the m-row matrix that repeats F(u) d_u times.
WeightedPoints normalized_weighted_pointset(const Embedding& e);

/// Text export: header "#spectral-embedding n k kind p seed", then one line
/// "u d_u F(u)_1 ... F(u)_k" per vertex with 17 significant digits.
void write_embedding(std::ostream& out, const Embedding& e);
Embedding read_embedding(std::istream& in);

}  // namespace spectral_part
