#include "degenwave/eigen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace degenwave {

namespace {

// Bisection (dstebz) + inverse iteration (dstein) for the lowest k eigenpairs.
void solve_lowest(const ModeOperator& op, int k, std::vector<double>& lambdas,
                  std::vector<double>& vecs_colmajor) {
  const lapack_int n = op.size();
  std::vector<double> d = op.diag;
  std::vector<double> e = op.off;
  lambdas.assign(k, 0.0);
  std::vector<lapack_int> iblock(n), isplit(n);
  lapack_int found = 0, nsplit = 0;
  std::vector<double> w(n);
  lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, k, 2.0 * LAPACKE_dlamch('S'),
                                   d.data(), e.data(), &found, &nsplit, w.data(), iblock.data(),
                                   isplit.data());
  if (info != 0 || found != k)
    throw std::runtime_error("eigensolver failure: bisection returned info=" +
                             std::to_string(info));
  vecs_colmajor.assign(static_cast<std::size_t>(n) * k, 0.0);
  std::vector<lapack_int> ifail(k);
  info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), k, w.data(), iblock.data(),
                        isplit.data(), vecs_colmajor.data(), n, ifail.data());
  if (info != 0)
    throw std::runtime_error("eigensolver failure: inverse iteration did not converge (info=" +
                             std::to_string(info) + ")");
  for (int i = 0; i < k; ++i) lambdas[i] = w[i];
}

// Full spectrum via the implicit QL/QR sweep (dstev); keep the lowest k.
void solve_full(const ModeOperator& op, int k, std::vector<double>& lambdas,
                std::vector<double>& vecs_colmajor) {
  const lapack_int n = op.size();
  std::vector<double> d = op.diag;
  std::vector<double> e = op.off;
  std::vector<double> z(static_cast<std::size_t>(n) * n);
  lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(), z.data(), n);
  if (info != 0)
    throw std::runtime_error("eigensolver failure: QL iteration cap exceeded (info=" +
                             std::to_string(info) + ")");
  lambdas.assign(d.begin(), d.begin() + k);
  vecs_colmajor.assign(z.begin(), z.begin() + static_cast<std::size_t>(n) * k);
}

}  // namespace

RadialEigenSystem solve_mode_spectrum(const ModeOperator& op, int k_max) {
  const int m = op.size();
  if (k_max < 1 || k_max > m) throw std::invalid_argument("k_max must lie in [1, n_r]");

  std::vector<double> lambdas, vecs;
  if (k_max <= m / 8)
    solve_lowest(op, k_max, lambdas, vecs);
  else
    solve_full(op, k_max, lambdas, vecs);

  for (int k = 0; k + 1 < k_max; ++k) {
    if (!(lambdas[k] < lambdas[k + 1]))
      throw std::runtime_error("eigensolver failure: spectrum not strictly increasing");
  }

  RadialEigenSystem sys;
  sys.mode = op.mode;
  sys.alpha = op.alpha;
  sys.lambdas = std::move(lambdas);
  sys.vectors.resize(k_max);
  sys.boundary_slopes.resize(k_max);
  const double h = op.grid.h;
  const double scale = 1.0 / std::sqrt(h);  // unit Euclidean -> unit discrete L2(0,1)
  for (int k = 0; k < k_max; ++k) {
    auto& v = sys.vectors[k];
    v.assign(vecs.begin() + static_cast<std::size_t>(k) * m,
             vecs.begin() + static_cast<std::size_t>(k + 1) * m);
    int lead = 0;
    while (lead < m - 1 && v[lead] == 0.0) ++lead;
    const double sign = v[lead] > 0.0 ? 1.0 : -1.0;
    for (double& x : v) x *= sign * scale;
    sys.boundary_slopes[k] = -v[m - 1] / (0.5 * h);
  }
  return sys;
}

}  // namespace degenwave
