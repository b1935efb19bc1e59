#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "degenwave/eigen.hpp"
#include "degenwave/grid.hpp"
#include "degenwave/params.hpp"

namespace degenwave {

enum class AngularBranch { cos_branch = 0, sin_branch = 1 };

/// Identifies one 2D basis element: branch x angular mode n x radial index k.
struct BasisIndex {
  AngularBranch branch = AngularBranch::cos_branch;
  int mode = 0;    ///< n >= 0 (sin branch only for n >= 1)
  int radial = 0;  ///< k, 0-based
};

using ModalCoeffs = std::vector<double>;

/// Orthonormal 2D eigenbasis Phi_b(theta,r) = A_b(theta) R_{n,k}(r) with
/// angular factors 1/sqrt(2pi) (n = 0), cos(n theta)/sqrt(pi), and
/// sin(n theta)/sqrt(pi), and the discrete radial eigenvectors. Elements are
/// enumerated n = 0..N, within n first the cos branch then (n >= 1) the sin
/// branch, radial index fastest; count = (2N+1) k_max.
///
/// lambda(b) = lambda_{0,k} + n^2: mode operators differ by n^2 I, so radial
/// spectra are shifted copies of each other. Eigenvalue collisions between
/// distinct (n,k) closer than 1e-9 relative are recorded, not resolved.
class SpectralBasis {
 public:
  SpectralBasis() = default;
  SpectralBasis(ModelParams params, RadialGrid grid, std::vector<RadialEigenSystem> systems);

  int count() const { return count_; }
  int modes() const { return static_cast<int>(systems_.size()) - 1; }
  int radial_count() const { return k_max_; }
  int angular_samples() const { return params_.angular_samples(); }
  const ModelParams& params() const { return params_; }
  const RadialGrid& grid() const { return grid_; }
  const RadialEigenSystem& system(int mode) const { return systems_[mode]; }

  BasisIndex index(int b) const;
  int flat(const BasisIndex& idx) const;

  double lambda(int b) const { return lambdas_[b]; }
  const std::vector<double>& lambdas() const { return lambdas_; }
  double boundary_slope(int b) const;
  const std::vector<double>& radial_vector(int b) const;

  double angular_factor(int b, double theta) const;
  double angular_factor_d1(int b, double theta) const;

  /// Element ids sorted by ascending lambda (ties by enumeration order).
  std::vector<int> by_ascending_lambda() const;

  /// Pairs of distinct (n,k) whose eigenvalues collide within 1e-9 relative.
  const std::vector<std::pair<int, int>>& near_collisions() const { return collisions_; }

 private:
  ModelParams params_;
  RadialGrid grid_;
  std::vector<RadialEigenSystem> systems_;
  std::vector<double> lambdas_;
  int k_max_ = 0;
  int count_ = 0;
  std::vector<std::pair<int, int>> collisions_;
};

/// Solves every mode's eigenproblem (independent solves, run in parallel) and
/// assembles the enumerated basis. Propagates eigensolver failures.
SpectralBasis assemble_basis(const ModelParams& params, const RadialGrid& grid);

/// Coefficient per element: discrete L2 inner product against that element.
ModalCoeffs to_modal(const GridField& u, const SpectralBasis& basis);

/// Pointwise synthesis sum_b c_b Phi_b on the P x M grid.
GridField from_modal(const ModalCoeffs& coeffs, const SpectralBasis& basis);

/// Per-(branch, n) radial profiles of a coefficient vector:
/// rho_g(r_j) = sum_k c_{g,k} R_{n,k}(r_j). Groups with all-zero coefficients
/// are skipped, which keeps sparse states (single modes, quasimodes) cheap.
struct SynthGroup {
  AngularBranch branch = AngularBranch::cos_branch;
  int mode = 0;
  std::vector<double> profile;
};
std::vector<SynthGroup> radial_profiles(const ModalCoeffs& coeffs, const SpectralBasis& basis);

/// Angular factor (and derivative) of a group at one angle.
double group_angular(const SynthGroup& g, double theta);
double group_angular_d1(const SynthGroup& g, double theta);

}  // namespace degenwave
