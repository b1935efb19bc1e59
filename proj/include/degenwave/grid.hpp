#pragma once

#include <cstddef>
#include <vector>

namespace degenwave {

/// Cell-centered staggered radial grid on (0,1): M cells of width h = 1/M,
/// centers r_j = (j+1/2)h (0-based), faces r = j*h for j = 0..M.
/// The face r = 0 carries weight 0^alpha = 0, so the weighted Neumann
/// condition at the degenerate boundary is built in with no approximation.
struct RadialGrid {
  int cell_count = 0;
  double h = 0.0;

  double center(int j) const { return (j + 0.5) * h; }
  double face(int j) const { return j * h; }
};

/// Throws std::invalid_argument when cells < 4.
RadialGrid build_radial_grid(int cells);

/// Scalar field sampled at (theta_i, r_j), theta_i = 2*pi*i/P uniform,
/// r_j the radial cell centers. Row-major: index i*n_radial + j.
struct GridField {
  int n_angular = 0;
  int n_radial = 0;
  std::vector<double> values;

  GridField() = default;
  GridField(int p, int m) : n_angular(p), n_radial(m), values(static_cast<std::size_t>(p) * m, 0.0) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_radial + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n_radial + j]; }
  double radial_spacing() const { return 1.0 / n_radial; }
  double angular_spacing() const;
  double theta(int i) const;
};

/// Uniform angular nodes 2*pi*i/P, i = 0..P-1.
std::vector<double> angular_nodes(int count);

}  // namespace degenwave
