#include "degenwave/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "degenwave/parallel.hpp"

namespace degenwave {

namespace {

constexpr double kCollisionTol = 1e-9;

double norm_cos(int n) {
  return n == 0 ? 1.0 / std::sqrt(2.0 * std::numbers::pi) : 1.0 / std::sqrt(std::numbers::pi);
}

}  // namespace

SpectralBasis::SpectralBasis(ModelParams params, RadialGrid grid,
                             std::vector<RadialEigenSystem> systems)
    : params_(params), grid_(grid), systems_(std::move(systems)) {
  k_max_ = params_.k_max;
  const int n_modes = static_cast<int>(systems_.size());
  count_ = (2 * n_modes - 1) * k_max_;
  lambdas_.resize(count_);
  for (int b = 0; b < count_; ++b) {
    const BasisIndex idx = index(b);
    lambdas_[b] = systems_[idx.mode].lambdas[idx.radial];
  }
  // report (never resolve) eigenvalue collisions between distinct (n,k)
  std::vector<int> order(count_);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lambdas_[a] < lambdas_[b]; });
  for (int i = 0; i + 1 < count_; ++i) {
    const int a = order[i], b = order[i + 1];
    const BasisIndex ia = index(a), ib = index(b);
    if (ia.mode == ib.mode && ia.radial == ib.radial) continue;  // sin/cos pairing
    const double gap = std::abs(lambdas_[a] - lambdas_[b]);
    if (gap <= kCollisionTol * std::max(1.0, std::abs(lambdas_[a])))
      collisions_.emplace_back(std::min(a, b), std::max(a, b));
  }
}

BasisIndex SpectralBasis::index(int b) const {
  if (b < k_max_) return {AngularBranch::cos_branch, 0, b};
  const int rest = b - k_max_;
  const int mode = 1 + rest / (2 * k_max_);
  const int within = rest % (2 * k_max_);
  if (within < k_max_) return {AngularBranch::cos_branch, mode, within};
  return {AngularBranch::sin_branch, mode, within - k_max_};
}

int SpectralBasis::flat(const BasisIndex& idx) const {
  if (idx.mode == 0) return idx.radial;
  int base = k_max_ + (idx.mode - 1) * 2 * k_max_;
  if (idx.branch == AngularBranch::sin_branch) base += k_max_;
  return base + idx.radial;
}

double SpectralBasis::boundary_slope(int b) const {
  const BasisIndex idx = index(b);
  return systems_[idx.mode].boundary_slopes[idx.radial];
}

const std::vector<double>& SpectralBasis::radial_vector(int b) const {
  const BasisIndex idx = index(b);
  return systems_[idx.mode].vectors[idx.radial];
}

double SpectralBasis::angular_factor(int b, double theta) const {
  const BasisIndex idx = index(b);
  if (idx.branch == AngularBranch::cos_branch)
    return std::cos(idx.mode * theta) * norm_cos(idx.mode);
  return std::sin(idx.mode * theta) * norm_cos(idx.mode);
}

double SpectralBasis::angular_factor_d1(int b, double theta) const {
  const BasisIndex idx = index(b);
  const double n = idx.mode;
  if (idx.branch == AngularBranch::cos_branch)
    return -n * std::sin(idx.mode * theta) * norm_cos(idx.mode);
  return n * std::cos(idx.mode * theta) * norm_cos(idx.mode);
}

std::vector<int> SpectralBasis::by_ascending_lambda() const {
  std::vector<int> order(count_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lambdas_[a] < lambdas_[b]; });
  return order;
}

SpectralBasis assemble_basis(const ModelParams& params, const RadialGrid& grid) {
  const ModelParams p = validate_params(params);
  std::vector<RadialEigenSystem> systems(p.n_theta + 1);
  std::exception_ptr failure;
  parallel_for(p.n_theta + 1, [&](int n) {
    try {
      const ModeOperator op = assemble_mode_operator(grid, p.alpha, n);
      systems[n] = solve_mode_spectrum(op, p.k_max);
    } catch (...) {
      failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  if (!(systems[0].lambdas[0] > 0.0))
    throw std::runtime_error("eigensolver failure: nonpositive ground eigenvalue");
  return SpectralBasis(p, grid, std::move(systems));
}

std::vector<SynthGroup> radial_profiles(const ModalCoeffs& coeffs, const SpectralBasis& basis) {
  if (static_cast<int>(coeffs.size()) != basis.count())
    throw std::invalid_argument("radial_profiles: coefficient count mismatch");
  const int m = basis.grid().cell_count;
  const int k_max = basis.radial_count();
  std::vector<SynthGroup> groups;
  auto emit = [&](AngularBranch branch, int n) {
    const int b0 = basis.flat({branch, n, 0});
    bool active = false;
    for (int k = 0; k < k_max; ++k) active = active || coeffs[b0 + k] != 0.0;
    if (!active) return;
    SynthGroup g;
    g.branch = branch;
    g.mode = n;
    g.profile.assign(m, 0.0);
    for (int k = 0; k < k_max; ++k) {
      const double c = coeffs[b0 + k];
      if (c == 0.0) continue;
      const auto& r = basis.radial_vector(b0 + k);
      for (int j = 0; j < m; ++j) g.profile[j] += c * r[j];
    }
    groups.push_back(std::move(g));
  };
  for (int n = 0; n <= basis.modes(); ++n) {
    emit(AngularBranch::cos_branch, n);
    if (n >= 1) emit(AngularBranch::sin_branch, n);
  }
  return groups;
}

double group_angular(const SynthGroup& g, double theta) {
  if (g.branch == AngularBranch::cos_branch) return std::cos(g.mode * theta) * norm_cos(g.mode);
  return std::sin(g.mode * theta) * norm_cos(g.mode);
}

double group_angular_d1(const SynthGroup& g, double theta) {
  const double n = g.mode;
  if (g.branch == AngularBranch::cos_branch)
    return -n * std::sin(g.mode * theta) * norm_cos(g.mode);
  return n * std::cos(g.mode * theta) * norm_cos(g.mode);
}

ModalCoeffs to_modal(const GridField& u, const SpectralBasis& basis) {
  const int p = basis.angular_samples();
  const int m = basis.grid().cell_count;
  if (u.n_angular != p || u.n_radial != m)
    throw std::invalid_argument("to_modal: field dimensions do not match the basis grid");
  const double dtheta = u.angular_spacing();
  const double h = u.radial_spacing();
  const int k_max = basis.radial_count();

  ModalCoeffs coeffs(basis.count(), 0.0);
  std::vector<double> ang(m);
  auto project_group = [&](AngularBranch branch, int n) {
    // stage 1: angular projection per radial cell
    for (int j = 0; j < m; ++j) ang[j] = 0.0;
    for (int i = 0; i < p; ++i) {
      const double theta = u.theta(i);
      const double a = (branch == AngularBranch::cos_branch)
                           ? std::cos(n * theta) * norm_cos(n)
                           : std::sin(n * theta) * norm_cos(n);
      if (a == 0.0) continue;
      const double wa = a * dtheta;
      for (int j = 0; j < m; ++j) ang[j] += wa * u.at(i, j);
    }
    // stage 2: radial projection per eigenvector
    const int b0 = basis.flat({branch, n, 0});
    for (int k = 0; k < k_max; ++k) {
      const auto& r = basis.radial_vector(b0 + k);
      double acc = 0.0;
      for (int j = 0; j < m; ++j) acc += ang[j] * r[j];
      coeffs[b0 + k] = acc * h;
    }
  };
  for (int n = 0; n <= basis.modes(); ++n) {
    project_group(AngularBranch::cos_branch, n);
    if (n >= 1) project_group(AngularBranch::sin_branch, n);
  }
  return coeffs;
}

GridField from_modal(const ModalCoeffs& coeffs, const SpectralBasis& basis) {
  const int p = basis.angular_samples();
  const int m = basis.grid().cell_count;
  GridField out(p, m);
  const auto groups = radial_profiles(coeffs, basis);
  for (const auto& g : groups) {
    for (int i = 0; i < p; ++i) {
      const double a = group_angular(g, out.theta(i));
      if (a == 0.0) continue;
      double* row = &out.at(i, 0);
      for (int j = 0; j < m; ++j) row[j] += a * g.profile[j];
    }
  }
  return out;
}

}  // namespace degenwave
