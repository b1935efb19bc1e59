#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace degenwave {

/// Physical and discretization parameters for one run.
///
/// The weight exponent must satisfy 1 <= alpha < 2; alpha = 2 is rejected
/// because the observability time threshold sqrt(2)/(2-alpha) diverges there.
struct ModelParams {
  double alpha = 1.0;        ///< weight exponent, w(r) = r^alpha, in [1,2)
  double delta0 = 0.02;      ///< strip half-parameter, in (0, 1/32)
  double t_final = 3.0;      ///< final time T > 0
  int n_theta = 16;          ///< angular modes retained: n = 0..n_theta
  int n_r = 128;             ///< radial cells
  int n_t = 64;              ///< time-quadrature sample count (even)
  int k_max = 8;             ///< radial eigenpairs kept per mode, <= n_r
  std::uint64_t seed = 1;    ///< PRNG seed for seeded families

  /// Angular sample count of grid fields; all quadratic observation
  /// integrands (frequency <= 2*n_theta) are integrated exactly in theta.
  int angular_samples() const { return n_theta < 1 ? 4 : 4 * n_theta; }

  /// Observability time threshold sqrt(2)/(2-alpha).
  double time_threshold() const;
};

/// Returns the params unchanged if every invariant holds, otherwise throws
/// std::invalid_argument naming the first violated invariant.
ModelParams validate_params(const ModelParams& raw);

struct AngularInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Observation geometry: the angular set I_omega = [0,4*delta0) u
/// (2pi-4*delta0, 2pi), the strip omega = I_omega x (0,1), the top boundary
/// Gamma (r = 1) and the degenerate boundary Gamma* (r = 0).
struct Geometry {
  double delta0 = 0.02;

  std::array<AngularInterval, 2> strip_components() const;
  AngularInterval complement() const;  ///< (4*delta0, 2pi - 4*delta0)
  double strip_measure() const { return 8.0 * delta0; }
  bool in_strip(double theta) const;
};

Geometry make_geometry(double delta0);

/// One member of the quasimode family u_{n,eps} = eta_eps(r) sin n(theta-t).
struct QuasimodeSpec {
  int n = 1;        ///< angular frequency, >= 1
  double eps = 0.125;  ///< radial concentration scale, in (0, 1/4)
};

/// Throws std::invalid_argument on an invalid spec.
QuasimodeSpec validate_quasimode(const QuasimodeSpec& spec);

}  // namespace degenwave
