#pragma once

#include <functional>
#include <vector>

#include "degenwave/basis.hpp"

namespace degenwave {

/// Initial data (position, velocity) as coefficients on the basis.
struct InitialData {
  ModalCoeffs phi0;
  ModalCoeffs phi1;
};

/// Solution snapshot at time t: coefficients of phi and dt phi.
struct ModalState {
  double t = 0.0;
  ModalCoeffs a;
  ModalCoeffs adot;
};

/// Per-element forcing f_b(t). A sinusoid amp_cos*cos(freq t) +
/// amp_sin*sin(freq t) is integrated in closed form (trivial when both
/// amplitudes vanish); a generic handle falls back to composite Simpson.
struct ElementForcing {
  double amp_cos = 0.0;
  double amp_sin = 0.0;
  double freq = 0.0;
  std::function<double(double)> generic;
};

struct ModalForcing {
  std::vector<ElementForcing> elements;  ///< size = basis count, or empty for f = 0
};

/// Exact modal propagation of the decoupled oscillators
/// a_b'' + lambda_b a_b = 0: no time-stepping error.
ModalState propagate_homogeneous(const InitialData& init, const SpectralBasis& basis, double t);

/// Homogeneous part plus the Duhamel integral int_0^t sin(w(t-s))/w f_b(s) ds.
/// Sinusoidal forcing uses the closed-form resonant/non-resonant primitive
/// (resonance when |w - freq| < 1e-9, by its limit formula); generic forcing
/// uses composite Simpson with n_t samples.
ModalState propagate_forced(const InitialData& init, const ModalForcing& forcing,
                            const SpectralBasis& basis, double t, int n_t);

/// E = 1/2 sum_b (adot_b^2 + lambda_b a_b^2), the modal Parseval form of
/// 1/2 int (dt phi)^2 + grad phi . A grad phi.
double energy(const ModalState& state, const SpectralBasis& basis);

struct Trajectory {
  double t_final = 0.0;
  int n_t = 0;
  std::vector<ModalState> states;  ///< n_t + 1 snapshots at m*T/n_t
};

/// Uniformly sampled states for downstream time quadrature. forcing may be
/// null (homogeneous). Requires n_t even and >= 16.
Trajectory sample_trajectory(const InitialData& init, const ModalForcing* forcing,
                             const SpectralBasis& basis, double t_final, int n_t);

}  // namespace degenwave
