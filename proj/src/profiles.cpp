#include "degenwave/profiles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace degenwave {

double weight(double r, double alpha) { return std::pow(r, alpha); }

// chi(x) = exp(-1/q) with q = x(2-x); chi' = chi * (2-2x)/q^2;
// chi'' = chi * [ (2-2x)^2/q^4 - 2/q^2 - 2(2-2x)^2/q^3 ].
double bump_chi(double x) {
  if (x <= 0.0 || x >= 2.0) return 0.0;
  return std::exp(-1.0 / (x * (2.0 - x)));
}

double bump_chi_d1(double x) {
  if (x <= 0.0 || x >= 2.0) return 0.0;
  const double q = x * (2.0 - x);
  return bump_chi(x) * (2.0 - 2.0 * x) / (q * q);
}

double bump_chi_d2(double x) {
  if (x <= 0.0 || x >= 2.0) return 0.0;
  const double q = x * (2.0 - x);
  const double p = 2.0 - 2.0 * x;
  const double q2 = q * q;
  return bump_chi(x) * (p * p / (q2 * q2) - 2.0 / q2 - 2.0 * p * p / (q2 * q));
}

double bump_eta(double r, double eps) { return bump_chi(r / eps); }
double bump_eta_d1(double r, double eps) { return bump_chi_d1(r / eps) / eps; }
double bump_eta_d2(double r, double eps) { return bump_chi_d2(r / eps) / (eps * eps); }

namespace {

double sigma(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
double sigma_d1(double x) { return x > 0.0 ? sigma(x) / (x * x) : 0.0; }
double sigma_d2(double x) { return x > 0.0 ? sigma(x) * (1.0 - 2.0 * x) / (x * x * x * x) : 0.0; }

struct StepEval {
  double s, d1, d2;
};

StepEval smoothstep_eval(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double a = sigma(x), b = sigma(1.0 - x);
  const double ad = sigma_d1(x), bd = -sigma_d1(1.0 - x);
  const double add = sigma_d2(x), bdd = sigma_d2(1.0 - x);
  const double den = a + b;
  const double u = ad * b - a * bd;
  const double up = add * b - a * bdd;
  const double s = a / den;
  const double d1 = u / (den * den);
  const double d2 = (up * den - 2.0 * u * (ad + bd)) / (den * den * den);
  return {s, d1, d2};
}

struct ZetaEval {
  double z, d1, d2;
};

// zeta(theta) = S((theta - 2 d0)/d0) * S((2pi - 2 d0 - theta)/d0)
ZetaEval zeta_eval(double theta, double delta0) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double inv = 1.0 / delta0;
  StepEval p = smoothstep_eval((theta - 2.0 * delta0) * inv);
  StepEval q = smoothstep_eval((two_pi - 2.0 * delta0 - theta) * inv);
  ZetaEval out;
  out.z = p.s * q.s;
  out.d1 = p.d1 * inv * q.s - p.s * q.d1 * inv;
  out.d2 = p.d2 * inv * inv * q.s - 2.0 * p.d1 * q.d1 * inv * inv + p.s * q.d2 * inv * inv;
  return out;
}

}  // namespace

double smoothstep(double x) { return smoothstep_eval(x).s; }
double cutoff_zeta(double theta, double delta0) { return zeta_eval(theta, delta0).z; }
double cutoff_zeta_d1(double theta, double delta0) { return zeta_eval(theta, delta0).d1; }
double cutoff_zeta_d2(double theta, double delta0) { return zeta_eval(theta, delta0).d2; }

double cutoff_gbound(double delta0) {
  // The transition bands are [2 d0, 3 d0] and its mirror; scan one band
  // densely (the construction is symmetric).
  const int samples = 4096;
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double theta = (2.0 + static_cast<double>(i) / samples) * delta0;
    ZetaEval e = zeta_eval(theta, delta0);
    worst = std::max(worst, 2.0 * std::abs(e.d1) + std::abs(e.d2));
  }
  return worst;
}

std::pair<GridField, GridField> quasimode_field(const QuasimodeSpec& spec, double t,
                                                const std::vector<double>& thetas,
                                                const RadialGrid& grid) {
  validate_quasimode(spec);
  const int p = static_cast<int>(thetas.size());
  const int m = grid.cell_count;
  GridField u(p, m), du(p, m);
  std::vector<double> eta(m);
  for (int j = 0; j < m; ++j) eta[j] = bump_eta(grid.center(j), spec.eps);
  for (int i = 0; i < p; ++i) {
    const double phase = spec.n * (thetas[i] - t);
    const double s = std::sin(phase), c = std::cos(phase);
    for (int j = 0; j < m; ++j) {
      u.at(i, j) = eta[j] * s;
      du.at(i, j) = -spec.n * eta[j] * c;
    }
  }
  return {std::move(u), std::move(du)};
}

std::vector<double> quasimode_radial_source(const QuasimodeSpec& spec, double alpha,
                                            const RadialGrid& grid) {
  validate_quasimode(spec);
  std::vector<double> rho(grid.cell_count, 0.0);
  for (int j = 0; j < grid.cell_count; ++j) {
    const double r = grid.center(j);
    if (r >= 2.0 * spec.eps) continue;
    rho[j] = -(alpha * std::pow(r, alpha - 1.0) * bump_eta_d1(r, spec.eps) +
               std::pow(r, alpha) * bump_eta_d2(r, spec.eps));
  }
  return rho;
}

GridField quasimode_residual(const QuasimodeSpec& spec, double alpha, double t,
                             const std::vector<double>& thetas, const RadialGrid& grid) {
  const auto rho = quasimode_radial_source(spec, alpha, grid);
  const int p = static_cast<int>(thetas.size());
  GridField f(p, grid.cell_count);
  for (int i = 0; i < p; ++i) {
    const double s = std::sin(spec.n * (thetas[i] - t));
    for (int j = 0; j < grid.cell_count; ++j) f.at(i, j) = rho[j] * s;
  }
  return f;
}

}  // namespace degenwave
