#include "spectral_part/linalg.hpp"

#include <cmath>
#include <string>

#include "spectral_part/errors.hpp"
#include "spectral_part/rng.hpp"
#include "spectral_part/tolerances.hpp"

namespace spectral_part {

void canonicalize_signs(DenseMatrix& m, Vector* signs) {
  if (signs) signs->setOnes(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (m.rows() > 0 && m(arg, j) < 0.0) {
      m.col(j) *= -1.0;
      if (signs) (*signs)(j) = -1.0;
    }
  }
}

double orthonormality_error(const DenseMatrix& q) {
  const DenseMatrix gram = q.transpose() * q;
  return (gram - DenseMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

EigenSystem sym_eig(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("sym_eig needs a square matrix");
  if (m.size() == 0) return {};
  if (!m.allFinite()) throw InputError("sym_eig input has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol::symmetry * scale) {
    throw InputError("sym_eig input is not symmetric (max |m_ij - m_ji| = " + std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge");
  }
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  canonicalize_signs(out.vectors);
  return out;
}

DenseMatrix orthonormalize_columns(const DenseMatrix& m, double collapse_tol) {
  DenseMatrix q = m;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double original = q.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    const double residual = q.col(j).norm();
    if (!(residual > collapse_tol * original) || !(residual > tol::rank_collapse)) {
      throw NumericError("column " + std::to_string(j) + " collapsed during orthonormalization");
    }
    q.col(j) /= residual;
  }
  return q;
}

ThinSvd thin_svd(const DenseMatrix& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index k = m.cols();
  if (n < k) throw InputError("thin_svd needs rows >= cols");
  if (!m.allFinite()) throw InputError("thin_svd input has non-finite entries");

  ThinSvd out;
  out.u = DenseMatrix::Zero(n, k);
  out.singular = Vector::Zero(k);
  out.v = DenseMatrix::Identity(k, k);
  if (k == 0) return out;

  const DenseMatrix gram = m.transpose() * m;
  DenseMatrix sym = 0.5 * (gram + gram.transpose());
  EigenSystem eig = sym_eig(sym);
  // Ascending eigenvalues -> descending singular values.
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = k - 1 - j;
    out.singular(j) = std::sqrt(std::max(0.0, eig.values(src)));
    out.v.col(j) = eig.vectors.col(src);
  }

  const double top = out.singular(0);
  const double cutoff = top * 1e-12;
  Eigen::Index unit = 0;
  for (Eigen::Index j = 0; j < k; ++j) {
    Vector col;
    if (top > 0.0 && out.singular(j) > cutoff) {
      col = m * out.v.col(j) / out.singular(j);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index i = 0; i < j; ++i) col -= out.u.col(i).dot(col) * out.u.col(i);
      }
      col.normalize();
    } else {
      // Complete the basis with the first unit vector that is not (nearly)
      // in the span of the columns chosen so far.
      for (;; ++unit) {
        col = Vector::Unit(n, unit);
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index i = 0; i < j; ++i) col -= out.u.col(i).dot(col) * out.u.col(i);
        }
        if (col.norm() > 1e-6) {
          ++unit;
          break;
        }
      }
      col.normalize();
    }
    out.u.col(j) = col;
  }
  Vector signs;
  canonicalize_signs(out.u, &signs);
  for (Eigen::Index j = 0; j < k; ++j) out.v.col(j) *= signs(j);
  return out;
}

DenseMatrix gaussian_matrix(std::size_t n, std::size_t k, std::uint64_t seed) {
  CounterRng rng(seed, StreamPurpose::gaussian_sketch);
  DenseMatrix s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal_at(i * k + j);
    }
  }
  return s;
}

}  // namespace spectral_part
