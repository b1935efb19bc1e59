#pragma once

#include <utility>
#include <vector>

#include "degenwave/grid.hpp"
#include "degenwave/params.hpp"

namespace degenwave {

/// Degeneracy weight w(r) = r^alpha.
double weight(double r, double alpha);

/// Fixed smooth bump profile chi(x) = exp(-1/(x(2-x))) on (0,2), 0 outside.
/// chi(1) = exp(-1) is the profile maximum.
double bump_chi(double x);
double bump_chi_d1(double x);
double bump_chi_d2(double x);

/// Radial bump eta_eps(r) = chi(r/eps); support is exactly (0, 2*eps).
double bump_eta(double r, double eps);
double bump_eta_d1(double r, double eps);
double bump_eta_d2(double r, double eps);

/// Smoothstep S(x) = sigma(x)/(sigma(x)+sigma(1-x)), sigma(x) = exp(-1/x)
/// for x > 0 (0 otherwise). S = 0 for x <= 0, S = 1 for x >= 1, C-infinity.
double smoothstep(double x);

/// Angular cut-off: zeta = 0 on [0, 2*delta0] u [2pi-2*delta0, 2pi),
/// zeta = 1 on [3*delta0, 2pi-3*delta0], transitions built from the
/// smoothstep so that |zeta'| <= C/delta0, |zeta''| <= C/delta0^2 with C
/// independent of delta0.
double cutoff_zeta(double theta, double delta0);
double cutoff_zeta_d1(double theta, double delta0);
double cutoff_zeta_d2(double theta, double delta0);

/// Analytic max over theta of 2|zeta'| + |zeta''|, the pointwise constant in
/// |g| <= C(delta0) (|phi| + |d_theta phi|) on the cut-off transition bands.
double cutoff_gbound(double delta0);

/// Quasimode u(theta,r) = eta_eps(r) sin n(theta - t) and its time
/// derivative -n eta_eps(r) cos n(theta - t), sampled at thetas x centers.
std::pair<GridField, GridField> quasimode_field(const QuasimodeSpec& spec, double t,
                                                const std::vector<double>& thetas,
                                                const RadialGrid& grid);

/// Radial factor of the quasimode forcing:
///   rho(r) = -d/dr(r^alpha eta_eps'(r)) = -(alpha r^(alpha-1) eta' + r^alpha eta''),
/// using the exact derivatives of chi. Support is contained in (0, 2*eps).
std::vector<double> quasimode_radial_source(const QuasimodeSpec& spec, double alpha,
                                            const RadialGrid& grid);

/// Forcing f = dtt u - div(A grad u) = rho(r) sin n(theta - t) on the grid.
GridField quasimode_residual(const QuasimodeSpec& spec, double alpha, double t,
                             const std::vector<double>& thetas, const RadialGrid& grid);

}  // namespace degenwave
