#include "degenwave/grid.hpp"

#include <numbers>
#include <stdexcept>

namespace degenwave {

RadialGrid build_radial_grid(int cells) {
  if (cells < 4) throw std::invalid_argument("radial grid needs at least 4 cells");
  return RadialGrid{cells, 1.0 / cells};
}

double GridField::angular_spacing() const { return 2.0 * std::numbers::pi / n_angular; }
double GridField::theta(int i) const { return i * angular_spacing(); }

std::vector<double> angular_nodes(int count) {
  std::vector<double> t(count);
  const double step = 2.0 * std::numbers::pi / count;
  for (int i = 0; i < count; ++i) t[i] = i * step;
  return t;
}

}  // namespace degenwave
