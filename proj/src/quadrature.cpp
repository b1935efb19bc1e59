#include "degenwave/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "degenwave/fft.hpp"

namespace degenwave {

double inner_l2(const GridField& u, const GridField& v) {
  if (u.n_angular != v.n_angular || u.n_radial != v.n_radial)
    throw std::invalid_argument("inner_l2: dimension mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < u.values.size(); ++k) acc += u.values[k] * v.values[k];
  return acc * u.angular_spacing() * u.radial_spacing();
}

double inner_h1w(const GridField& u, const GridField& v, double alpha) {
  if (u.n_angular != v.n_angular || u.n_radial != v.n_radial)
    throw std::invalid_argument("inner_h1w: dimension mismatch");
  const int p = u.n_angular;
  const int m = u.n_radial;
  const double h = u.radial_spacing();
  const double dtheta = u.angular_spacing();

  // angular part: spectral derivatives column-wise in theta
  SpectralDifferentiator diff(p);
  std::vector<double> cu(p), cv(p), du(p), dv(p);
  double ang = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < p; ++i) {
      cu[i] = u.at(i, j);
      cv[i] = v.at(i, j);
    }
    diff.derivative(cu, du);
    diff.derivative(cv, dv);
    for (int i = 0; i < p; ++i) ang += du[i] * dv[i];
  }

  // radial part: face slopes, interior faces plus the Dirichlet ghost face at
  // r = 1 (weight 1, slope (0 - u_M)/(h/2), half-cell face measure h/2); this
  // is exactly the quadratic form of the mode operator.
  double rad = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j + 1 < m; ++j) {
      const double w = std::pow((j + 1) * h, alpha);
      const double su = (u.at(i, j + 1) - u.at(i, j)) / h;
      const double sv = (v.at(i, j + 1) - v.at(i, j)) / h;
      rad += w * su * sv;
    }
    const double su_top = -u.at(i, m - 1) / (0.5 * h);
    const double sv_top = -v.at(i, m - 1) / (0.5 * h);
    rad += 0.5 * su_top * sv_top;
  }
  return (ang + rad) * dtheta * h;
}

std::vector<double> boundary_derivative(const GridField& u) {
  const double h = u.radial_spacing();
  std::vector<double> out(u.n_angular);
  for (int i = 0; i < u.n_angular; ++i) out[i] = -u.at(i, u.n_radial - 1) / (0.5 * h);
  return out;
}

std::vector<double> simpson_weights(int intervals, double step) {
  if (intervals < 2 || intervals % 2 != 0)
    throw std::invalid_argument("composite Simpson needs an even interval count >= 2");
  std::vector<double> w(intervals + 1, 0.0);
  const double c = step / 3.0;
  w[0] = c;
  w[intervals] = c;
  for (int i = 1; i < intervals; ++i) w[i] = (i % 2 == 1) ? 4.0 * c : 2.0 * c;
  return w;
}

double integrate_simpson(std::span<const double> samples, double step) {
  const int n = static_cast<int>(samples.size()) - 1;
  const auto w = simpson_weights(n, step);
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) acc += w[i] * samples[i];
  return acc;
}

}  // namespace degenwave
