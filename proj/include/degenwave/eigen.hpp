#pragma once

#include <vector>

#include "degenwave/mode_operator.hpp"

namespace degenwave {

/// The k_max lowest eigenpairs of one mode operator. Eigenvalues are strictly
/// increasing (radial Sturm-Liouville spectra are simple); eigenvectors are
/// orthonormal in the discrete L2(0,1) inner product (weight h) and sign-fixed
/// so the first cell value is positive. boundary_slopes follow the same ghost
/// convention as boundary_derivative: -2 R_{M-1} / h.
struct RadialEigenSystem {
  int mode = 0;
  double alpha = 1.0;
  std::vector<double> lambdas;
  std::vector<std::vector<double>> vectors;
  std::vector<double> boundary_slopes;
};

/// Solves the symmetric tridiagonal eigenproblem. Uses bisection plus inverse
/// iteration when k_max <= M/8 (only low modes wanted), the full QL sweep
/// otherwise. Solver non-convergence throws std::runtime_error; it is never a
/// silent wrong answer.
RadialEigenSystem solve_mode_spectrum(const ModeOperator& op, int k_max);

}  // namespace degenwave
