#include "degenwave/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "degenwave/profiles.hpp"

namespace degenwave {

InitialData random_superposition(std::mt19937_64& rng, const SpectralBasis& basis) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  InitialData d;
  d.phi0.resize(basis.count());
  d.phi1.resize(basis.count());
  for (int b = 0; b < basis.count(); ++b) {
    const double inv_lambda = 1.0 / basis.lambda(b);
    d.phi0[b] = gauss(rng) * inv_lambda;
    d.phi1[b] = gauss(rng) * inv_lambda;
  }
  return d;
}

std::vector<InitialData> observation_family(const SpectralBasis& basis, int eig_count,
                                            int random_count, std::uint64_t seed) {
  std::vector<InitialData> family;
  family.reserve(eig_count + random_count);
  const auto order = basis.by_ascending_lambda();
  for (int i = 0; i < eig_count && i < static_cast<int>(order.size()); ++i) {
    InitialData d;
    d.phi0.assign(basis.count(), 0.0);
    d.phi1.assign(basis.count(), 0.0);
    d.phi0[order[i]] = 1.0;
    family.push_back(std::move(d));
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) family.push_back(random_superposition(rng, basis));
  return family;
}

GridField random_bump_field(std::mt19937_64& rng, int angular_samples, const RadialGrid& grid,
                            int max_mode) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> mode(0, max_mode);
  std::normal_distribution<double> gauss(0.0, 1.0);
  GridField u(angular_samples, grid.cell_count);
  const int bumps = 3;
  for (int q = 0; q < bumps; ++q) {
    // support [c - w, c + w] kept inside (0, 1 - 2h]: strictly away from Gamma
    const double half_width = 0.05 + 0.2 * unif(rng);
    const double margin = 2.0 * grid.h;
    const double center = half_width + unif(rng) * (1.0 - margin - 2.0 * half_width);
    const int n = mode(rng);
    const double amp = gauss(rng);
    const double phase = 2.0 * std::numbers::pi * unif(rng);
    for (int i = 0; i < angular_samples; ++i) {
      const double ang = amp * std::cos(n * u.theta(i) + phase);
      for (int j = 0; j < grid.cell_count; ++j) {
        const double x = (grid.center(j) - center + half_width) / half_width;  // chi wants (0,2)
        const double radial = bump_chi(x);
        if (radial != 0.0) u.at(i, j) += ang * radial;
      }
    }
  }
  return u;
}

}  // namespace degenwave
