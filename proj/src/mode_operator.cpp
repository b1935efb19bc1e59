#include "degenwave/mode_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace degenwave {

ModeOperator assemble_mode_operator(const RadialGrid& grid, double alpha, int mode) {
  if (!(alpha >= 1.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in [1,2)");
  if (mode < 0) throw std::invalid_argument("mode index must be >= 0");
  const int m = grid.cell_count;
  const double h = grid.h;
  const double inv_h2 = 1.0 / (h * h);

  ModeOperator op;
  op.mode = mode;
  op.alpha = alpha;
  op.grid = grid;
  op.diag.assign(m, 0.0);
  op.off.assign(m - 1, 0.0);

  // Interior face weights w_{j+1/2} = (r_{j+1/2})^alpha; the r = 0 face weight
  // is exactly zero, the r = 1 face enters through the ghost R_{M+1} = -R_M.
  const double shift = static_cast<double>(mode) * mode;
  for (int j = 0; j < m; ++j) {
    const double w_lo = (j == 0) ? 0.0 : std::pow(grid.face(j), alpha);
    const double w_hi = std::pow(grid.face(j + 1), alpha);
    if (j < m - 1) {
      op.diag[j] = (w_lo + w_hi) * inv_h2 + shift;
      op.off[j] = -w_hi * inv_h2;
    } else {
      // ghost flux F_{M+1/2} = w * (-2 R_M)/h
      op.diag[j] = (w_lo + 2.0 * w_hi) * inv_h2 + shift;
    }
  }
  return op;
}

void apply_mode_operator(const ModeOperator& op, std::span<const double> v, std::span<double> y) {
  const int m = op.size();
  if (static_cast<int>(v.size()) != m || static_cast<int>(y.size()) != m)
    throw std::invalid_argument("apply_mode_operator: dimension mismatch");
  for (int j = 0; j < m; ++j) {
    double acc = op.diag[j] * v[j];
    if (j > 0) acc += op.off[j - 1] * v[j - 1];
    if (j < m - 1) acc += op.off[j] * v[j + 1];
    y[j] = acc;
  }
}

std::vector<double> apply_mode_operator(const ModeOperator& op, std::span<const double> v) {
  std::vector<double> y(op.size());
  apply_mode_operator(op, v, y);
  return y;
}

double operator_norm1(const ModeOperator& op) {
  const int m = op.size();
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    double col = std::abs(op.diag[j]);
    if (j > 0) col += std::abs(op.off[j - 1]);
    if (j < m - 1) col += std::abs(op.off[j]);
    worst = std::max(worst, col);
  }
  return worst;
}

}  // namespace degenwave
