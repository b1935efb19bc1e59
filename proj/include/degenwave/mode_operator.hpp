#pragma once

#include <span>
#include <vector>

#include "degenwave/grid.hpp"

namespace degenwave {

/// Symmetric tridiagonal flux-form discretization of
///   L_n R = -(r^alpha R')' + n^2 R
/// on the radial grid. Face fluxes F_{j+1/2} = (r_{j+1/2})^alpha (R_{j+1}-R_j)/h;
/// F at r = 0 is exactly 0 (degenerate Neumann face), the Dirichlet condition
/// at r = 1 enters through the ghost reflection R_{M+1} = -R_M, which keeps
/// the matrix symmetric. Off-diagonal entries are all <= 0 (Stieltjes).
struct ModeOperator {
  int mode = 0;
  double alpha = 1.0;
  RadialGrid grid;
  std::vector<double> diag;
  std::vector<double> off;  ///< size cell_count - 1

  int size() const { return grid.cell_count; }
};

ModeOperator assemble_mode_operator(const RadialGrid& grid, double alpha, int mode);

/// y = L_n v. Throws on dimension mismatch.
void apply_mode_operator(const ModeOperator& op, std::span<const double> v, std::span<double> y);
std::vector<double> apply_mode_operator(const ModeOperator& op, std::span<const double> v);

/// Max column absolute sum.
double operator_norm1(const ModeOperator& op);

}  // namespace degenwave
