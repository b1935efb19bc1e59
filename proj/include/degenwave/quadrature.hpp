#pragma once

#include <span>
#include <vector>

#include "degenwave/grid.hpp"

namespace degenwave {

/// Discrete L2(Omega) inner product, measure dz = dtheta dr:
/// sum u_ij v_ij (2pi/P) h. Throws on dimension mismatch.
double inner_l2(const GridField& u, const GridField& v);

/// Discrete weighted H1 form int (d_th u d_th v + r^alpha d_r u d_r v) dz for
/// fields vanishing at r = 1. Angular derivatives are spectral (exact for
/// band-limited samples); radial derivatives are face differences with the
/// Dirichlet ghost at r = 1 and zero weight at the r = 0 face. The radial part
/// coincides with the quadratic form of the mode operator, so discrete
/// eigenfields satisfy inner_h1w(Phi,Phi) = lambda exactly.
double inner_h1w(const GridField& u, const GridField& v, double alpha);

/// One-sided boundary derivative at r = 1 per angular sample:
/// (0 - u_{i,M-1}) / (h/2), consistent with the operator's ghost convention.
std::vector<double> boundary_derivative(const GridField& u);

/// Composite Simpson weights for n+1 equispaced samples (n even, >= 2),
/// already multiplied by the step: sum_i w_i f(x_i) ~ integral.
std::vector<double> simpson_weights(int intervals, double step);

/// Composite Simpson integral of sampled values (odd count).
double integrate_simpson(std::span<const double> samples, double step);

}  // namespace degenwave
