#pragma once

#include <cstddef>

// Numerical tolerances shared by all modules.
namespace spectral_part::tol {

inline constexpr double symmetry = 1e-12;
inline constexpr double orthonormality = 1e-9;
inline constexpr double eig_residual = 1e-8;   // relative to ||M||_F
inline constexpr double svd_residual = 1e-8;   // relative to ||M||_F
inline constexpr double check_slack = 1e-9;    // absolute, on top of every bound
inline constexpr double span_condition = 1e-8; // smallest admissible sigma_min(F)
inline constexpr double rank_collapse = 1e-300;
inline constexpr double phi_tie = 1e-12;       // grouping of equal conductances
inline constexpr double zero_eigenvalue = 1e-8;

inline constexpr std::size_t default_dense_threshold = 4096;

}  // namespace spectral_part::tol
