#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "degenwave/mode_operator.hpp"
#include "degenwave/params.hpp"

namespace degenwave {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      ///< worst observed value of the audited quantity
  double tolerance = 0.0;
  std::string detail;
};

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Symmetry of an operator application on seeded random pairs:
/// |<Lu,v> - <u,Lv>| <= tol * |u| |v| |L|_1 in the h-weighted inner product.
/// Callable with a deliberately corrupted apply (e.g. a sign-flipped flux), in
/// which case it reports the failure by name.
CheckResult check_apply_symmetry(const std::string& name, const ApplyFn& apply, int size,
                                 double h, double norm1, std::uint64_t seed, int pairs,
                                 double tol);

/// The mode operator's own apply.
CheckResult check_operator_symmetry(const ModeOperator& op, std::uint64_t seed, int pairs,
                                    double tol);

/// The built-in invariant suite: operator symmetry (n in {0,1,8}),
/// basis orthonormality, H1 Parseval, energy conservation, and the
/// Hardy/Poincare inequalities (the run's alpha plus the constant-8 check at
/// alpha = 1). One result per check.
std::vector<CheckResult> run_invariant_suite(const ModelParams& params);

}  // namespace degenwave
