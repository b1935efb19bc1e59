#include "degenwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "degenwave/basis.hpp"
#include "degenwave/evolution.hpp"
#include "degenwave/observables.hpp"
#include "degenwave/quadrature.hpp"
#include "degenwave/random_fields.hpp"

namespace degenwave {

CheckResult check_apply_symmetry(const std::string& name, const ApplyFn& apply, int size,
                                 double h, double norm1, std::uint64_t seed, int pairs,
                                 double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> u(size), v(size), lu(size), lv(size);
  double worst = 0.0;
  for (int trial = 0; trial < pairs; ++trial) {
    for (int j = 0; j < size; ++j) {
      u[j] = gauss(rng);
      v[j] = gauss(rng);
    }
    apply(u, lu);
    apply(v, lv);
    double luv = 0.0, ulv = 0.0, nu = 0.0, nv = 0.0;
    for (int j = 0; j < size; ++j) {
      luv += lu[j] * v[j];
      ulv += u[j] * lv[j];
      nu += u[j] * u[j];
      nv += v[j] * v[j];
    }
    const double bound = std::sqrt(nu * h) * std::sqrt(nv * h) * norm1;
    worst = std::max(worst, std::abs(luv - ulv) * h / bound);
  }
  CheckResult res;
  res.name = name;
  res.worst = worst;
  res.tolerance = tol;
  res.passed = worst <= tol;
  std::ostringstream os;
  os << pairs << " seeded pairs, worst " << worst;
  res.detail = os.str();
  return res;
}

CheckResult check_operator_symmetry(const ModeOperator& op, std::uint64_t seed, int pairs,
                                    double tol) {
  return check_apply_symmetry(
      "operator_symmetry_n" + std::to_string(op.mode),
      [&op](std::span<const double> in, std::span<double> out) {
        apply_mode_operator(op, in, out);
      },
      op.size(), op.grid.h, operator_norm1(op), seed, pairs, tol);
}

namespace {

CheckResult check_orthonormality(const SpectralBasis& basis) {
  const auto order = basis.by_ascending_lambda();
  const int count = std::min<int>(basis.count(), 128);
  std::vector<GridField> fields;
  fields.reserve(count);
  for (int i = 0; i < count; ++i) {
    ModalCoeffs c(basis.count(), 0.0);
    c[order[i]] = 1.0;
    fields.push_back(from_modal(c, basis));
  }
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    for (int j = i; j < count; ++j) {
      const double gram = inner_l2(fields[i], fields[j]);
      worst = std::max(worst, std::abs(gram - (i == j ? 1.0 : 0.0)));
    }
  }
  CheckResult res;
  res.name = "basis_orthonormality";
  res.worst = worst;
  res.tolerance = 1e-10;
  res.passed = worst <= res.tolerance;
  res.detail = "Gram of the " + std::to_string(count) + " lowest elements";
  return res;
}

CheckResult check_parseval(const SpectralBasis& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const InitialData d = random_superposition(rng, basis);
    const GridField u = from_modal(d.phi0, basis);
    double modal = 0.0;
    for (int b = 0; b < basis.count(); ++b)
      modal += basis.lambda(b) * d.phi0[b] * d.phi0[b];
    const double grid_form = inner_h1w(u, u, basis.params().alpha);
    worst = std::max(worst, std::abs(grid_form - modal) / std::max(modal, 1e-300));
  }
  CheckResult res;
  res.name = "h1_parseval";
  res.worst = worst;
  res.tolerance = 1e-8;
  res.passed = worst <= res.tolerance;
  res.detail = "20 seeded band-limited fields";
  return res;
}

CheckResult check_energy_conservation(const SpectralBasis& basis, std::uint64_t seed, int n_t) {
  std::mt19937_64 rng(seed);
  const double t_final = basis.params().t_final;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const InitialData d = random_superposition(rng, basis);
    const Trajectory traj = sample_trajectory(d, nullptr, basis, t_final, n_t);
    const double e0 = energy(traj.states.front(), basis);
    for (const auto& st : traj.states)
      worst = std::max(worst, std::abs(energy(st, basis) - e0) / std::max(e0, 1.0));
  }
  CheckResult res;
  res.name = "energy_conservation";
  res.worst = worst;
  res.tolerance = 1e-12;
  res.passed = worst <= res.tolerance;
  res.detail = "20 seeded data, " + std::to_string(n_t + 1) + " samples";
  return res;
}

CheckResult check_hardy(double alpha, const RadialGrid& grid, int angular_samples,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  bool all_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const GridField u = random_bump_field(rng, angular_samples, grid, 6);
    const HardyReport rep = hardy_check(u, alpha);
    all_ok = all_ok && rep.satisfied;
    if (rep.rhs > 0.0) worst = std::max(worst, rep.lhs / (rep.paper_constant * rep.rhs));
  }
  CheckResult res;
  std::ostringstream name;
  name << (alpha == 1.0 ? "poincare_alpha1" : "hardy_alpha") << (alpha == 1.0 ? "" : std::to_string(alpha));
  res.name = name.str();
  res.worst = worst;
  res.tolerance = 1.0 + 1e-8;
  res.passed = all_ok;
  res.detail = "100 seeded fields vanishing at r=1; worst lhs/(C rhs)";
  return res;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const ModelParams& raw) {
  const ModelParams params = validate_params(raw);
  const RadialGrid grid = build_radial_grid(params.n_r);
  std::vector<CheckResult> results;

  for (int n : {0, 1, 8}) {
    const ModeOperator op = assemble_mode_operator(grid, params.alpha, n);
    results.push_back(check_operator_symmetry(op, params.seed + n, 100, 1e-12));
  }

  const SpectralBasis basis = assemble_basis(params, grid);
  results.push_back(check_orthonormality(basis));
  results.push_back(check_parseval(basis, params.seed + 11));
  results.push_back(check_energy_conservation(basis, params.seed + 13, params.n_t));

  results.push_back(check_hardy(params.alpha, grid, params.angular_samples(), params.seed + 17));
  if (params.alpha != 1.0)
    results.push_back(check_hardy(1.0, grid, params.angular_samples(), params.seed + 19));
  return results;
}

}  // namespace degenwave
