#include "degenwave/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "degenwave/quadrature.hpp"

namespace degenwave {

namespace {

constexpr double kResonanceTol = 1e-9;

struct OscState {
  double a, adot;
};

OscState homogeneous(double a0, double v0, double omega, double t) {
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  return {a0 * c + v0 * s / omega, -a0 * omega * s + v0 * c};
}

// Duhamel response of a'' + w^2 a = cos(nu t) (resp. sin(nu t)), zero data.
OscState duhamel_cos(double omega, double nu, double t) {
  if (std::abs(omega - nu) < kResonanceTol) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return {t * s / (2.0 * omega), (s + omega * t * c) / (2.0 * omega)};
  }
  const double d = omega * omega - nu * nu;
  return {(std::cos(nu * t) - std::cos(omega * t)) / d,
          (-nu * std::sin(nu * t) + omega * std::sin(omega * t)) / d};
}

OscState duhamel_sin(double omega, double nu, double t) {
  if (std::abs(omega - nu) < kResonanceTol) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return {(s - omega * t * c) / (2.0 * omega * omega), t * s / 2.0};
  }
  const double d = omega * omega - nu * nu;
  return {(std::sin(nu * t) - (nu / omega) * std::sin(omega * t)) / d,
          nu * (std::cos(nu * t) - std::cos(omega * t)) / d};
}

// Composite Simpson for the generic Duhamel integral and its derivative:
//   a(t) = int_0^t sin(w(t-s))/w f(s) ds,  a'(t) = int_0^t cos(w(t-s)) f(s) ds.
OscState duhamel_generic(double omega, const std::function<double(double)>& f, double t, int n_t) {
  if (t == 0.0) return {0.0, 0.0};
  const double step = t / n_t;
  const auto w = simpson_weights(n_t, step);
  double a = 0.0, adot = 0.0;
  for (int i = 0; i <= n_t; ++i) {
    const double s = i * step;
    const double fv = f(s);
    a += w[i] * std::sin(omega * (t - s)) / omega * fv;
    adot += w[i] * std::cos(omega * (t - s)) * fv;
  }
  return {a, adot};
}

void check_sizes(const InitialData& init, const SpectralBasis& basis) {
  if (static_cast<int>(init.phi0.size()) != basis.count() ||
      static_cast<int>(init.phi1.size()) != basis.count())
    throw std::invalid_argument("initial data does not match the basis enumeration");
}

}  // namespace

ModalState propagate_homogeneous(const InitialData& init, const SpectralBasis& basis, double t) {
  check_sizes(init, basis);
  ModalState out;
  out.t = t;
  out.a.resize(basis.count());
  out.adot.resize(basis.count());
  for (int b = 0; b < basis.count(); ++b) {
    const OscState s = homogeneous(init.phi0[b], init.phi1[b], std::sqrt(basis.lambda(b)), t);
    out.a[b] = s.a;
    out.adot[b] = s.adot;
  }
  return out;
}

ModalState propagate_forced(const InitialData& init, const ModalForcing& forcing,
                            const SpectralBasis& basis, double t, int n_t) {
  if (forcing.elements.empty()) return propagate_homogeneous(init, basis, t);
  check_sizes(init, basis);
  if (static_cast<int>(forcing.elements.size()) != basis.count())
    throw std::invalid_argument("forcing does not match the basis enumeration");
  ModalState out = propagate_homogeneous(init, basis, t);
  for (int b = 0; b < basis.count(); ++b) {
    const ElementForcing& f = forcing.elements[b];
    const double omega = std::sqrt(basis.lambda(b));
    if (f.generic) {
      const OscState d = duhamel_generic(omega, f.generic, t, n_t);
      out.a[b] += d.a;
      out.adot[b] += d.adot;
      continue;
    }
    if (f.amp_cos != 0.0) {
      const OscState d = duhamel_cos(omega, f.freq, t);
      out.a[b] += f.amp_cos * d.a;
      out.adot[b] += f.amp_cos * d.adot;
    }
    if (f.amp_sin != 0.0) {
      const OscState d = duhamel_sin(omega, f.freq, t);
      out.a[b] += f.amp_sin * d.a;
      out.adot[b] += f.amp_sin * d.adot;
    }
  }
  return out;
}

double energy(const ModalState& state, const SpectralBasis& basis) {
  double acc = 0.0;
  for (int b = 0; b < basis.count(); ++b)
    acc += state.adot[b] * state.adot[b] + basis.lambda(b) * state.a[b] * state.a[b];
  return 0.5 * acc;
}

Trajectory sample_trajectory(const InitialData& init, const ModalForcing* forcing,
                             const SpectralBasis& basis, double t_final, int n_t) {
  if (n_t < 16 || n_t % 2 != 0)
    throw std::invalid_argument("trajectory sampling needs even n_t >= 16");
  Trajectory traj;
  traj.t_final = t_final;
  traj.n_t = n_t;
  traj.states.reserve(n_t + 1);
  for (int m = 0; m <= n_t; ++m) {
    const double t = t_final * m / n_t;
    traj.states.push_back(forcing ? propagate_forced(init, *forcing, basis, t, n_t)
                                  : propagate_homogeneous(init, basis, t));
  }
  return traj;
}

}  // namespace degenwave
