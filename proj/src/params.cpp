#include "degenwave/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace degenwave {

double ModelParams::time_threshold() const { return std::sqrt(2.0) / (2.0 - alpha); }

ModelParams validate_params(const ModelParams& raw) {
  if (!(raw.alpha >= 1.0 && raw.alpha < 2.0))
    throw std::invalid_argument("alpha must lie in [1,2)");
  if (!(raw.delta0 > 0.0 && raw.delta0 < 1.0 / 32.0))
    throw std::invalid_argument("delta0 must lie in (0,1/32)");
  if (!(raw.t_final > 0.0)) throw std::invalid_argument("T must be positive");
  if (raw.n_theta < 0) throw std::invalid_argument("n_theta must be a nonnegative integer");
  if (raw.n_r < 1) throw std::invalid_argument("n_r must be a positive integer");
  if (raw.n_t < 2 || raw.n_t % 2 != 0)
    throw std::invalid_argument("n_t must be a positive even integer");
  if (raw.k_max < 1) throw std::invalid_argument("k_max must be a positive integer");
  if (raw.k_max > raw.n_r) throw std::invalid_argument("k_max must not exceed n_r");
  return raw;
}

std::array<AngularInterval, 2> Geometry::strip_components() const {
  const double two_pi = 2.0 * std::numbers::pi;
  return {AngularInterval{0.0, 4.0 * delta0}, AngularInterval{two_pi - 4.0 * delta0, two_pi}};
}

AngularInterval Geometry::complement() const {
  const double two_pi = 2.0 * std::numbers::pi;
  return {4.0 * delta0, two_pi - 4.0 * delta0};
}

bool Geometry::in_strip(double theta) const {
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  return theta < 4.0 * delta0 || theta > two_pi - 4.0 * delta0;
}

Geometry make_geometry(double delta0) {
  if (!(delta0 > 0.0 && delta0 < 1.0 / 32.0))
    throw std::invalid_argument("delta0 must lie in (0,1/32)");
  return Geometry{delta0};
}

QuasimodeSpec validate_quasimode(const QuasimodeSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("quasimode frequency n must be >= 1");
  if (!(spec.eps > 0.0 && spec.eps < 0.25))
    throw std::invalid_argument("quasimode eps must lie in (0,1/4)");
  return spec;
}

}  // namespace degenwave
