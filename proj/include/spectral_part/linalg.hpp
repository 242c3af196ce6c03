#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace spectral_part {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenpairs of a symmetric matrix. values ascending; column j of vectors is
/// the unit eigenvector of values[j].
struct EigenSystem {
  Vector values;
  DenseMatrix vectors;
};

/// Full symmetric eigendecomposition.
///
/// Within each column the largest-magnitude entry is made positive (ties go to
/// the lowest row index). Throws InputError for non-square, non-finite or
/// asymmetric (beyond 1e-12 relative) input and NumericError if the solver
/// does not converge.
EigenSystem sym_eig(const DenseMatrix& m);

struct ThinSvd {
  DenseMatrix u;       // n x k, orthonormal columns
  Vector singular;     // k values, descending
  DenseMatrix v;       // k x k orthogonal
};

/// Thin SVD of an n x k matrix (n >= k) through the eigensystem of the k x k
/// Gram matrix. Columns of U for zero singular values are completed by
/// orthogonalising unit vectors against the preceding columns. U columns
/// follow the sym_eig sign convention (V flipped to match).
ThinSvd thin_svd(const DenseMatrix& m);

/// n x k matrix of standard normals from the gaussian_sketch stream of
/// `seed`: entry (i, j) is CounterRng::normal_at(i * k + j).
DenseMatrix gaussian_matrix(std::size_t n, std::size_t k, std::uint64_t seed);

/// Two-pass modified Gram-Schmidt. Throws NumericError if a column's
/// residual norm falls below `collapse_tol` times its original norm.
DenseMatrix orthonormalize_columns(const DenseMatrix& m, double collapse_tol = 1e-13);

/// Applies the sign convention of sym_eig to every column of m in place and
/// records the flips (+1/-1) in `signs` when non-null.
void canonicalize_signs(DenseMatrix& m, Vector* signs = nullptr);

/// max_ij |(Q^T Q - I)_ij|.
double orthonormality_error(const DenseMatrix& q);

}  // namespace spectral_part
