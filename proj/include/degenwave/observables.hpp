#pragma once

#include <array>
#include <string>
#include <vector>

#include "degenwave/evolution.hpp"
#include "degenwave/params.hpp"

namespace degenwave {

/// Observation functionals of one homogeneous evolution, and the threshold
/// term ((2-alpha)T - sqrt(2)) E(0) they are compared against.
/// ratio_mixed = threshold_term / (O_Gamma + O_omega);
/// ratio_top_only = threshold_term / O_Gamma (+-inf when O_Gamma = 0 and the
/// numerator is nonzero). Zero data yields an all-zero report.
struct ObservationReport {
  double E0 = 0.0;
  double O_Gamma = 0.0;
  double O_omega = 0.0;
  double threshold_term = 0.0;
  double ratio_mixed = 0.0;
  double ratio_top_only = 0.0;
  bool below_threshold = false;
};

struct HardyReport {
  double alpha = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double paper_constant = 0.0;
  bool satisfied = true;
};

/// Multiplier computation for psi = zeta*phi:
///   B1 = iint (dtt psi)(H.grad psi), B2 = -iint div(A grad psi)(H.grad psi),
///   B3 = iint g (H.grad psi), with H = (theta - pi, r).
/// residual_rel audits B1 + B2 = B3. b1_terms/b2_terms are the
/// integration-by-parts breakdown: {X(T), -X(0), iint (dt psi)^2, total} and
/// {-1/2 boundary term on Gamma, -alpha/2 iint r^alpha (dr psi)^2, total};
/// residual_ibp compares B1+B2 against that breakdown. energy_residual audits
/// E_psi(T) - E_psi(0) = iint g dt psi.
struct MultiplierAudit {
  double B1 = 0.0;
  double B2 = 0.0;
  double B3 = 0.0;
  double residual_rel = 0.0;
  std::array<double, 4> b1_terms{};
  std::array<double, 3> b2_terms{};
  double residual_ibp = 0.0;
  double energy_residual = 0.0;
};

/// phi = psi + xi with psi = zeta*phi, xi = (1-zeta)*phi, and the commutator
/// forcing g = -2 zeta' d_theta phi - zeta'' phi (analytic zeta derivatives).
struct CutoffDecomposition {
  GridField psi;
  GridField xi;
  GridField g;
};

/// One audited identity: |value| against 0 (or against a reference), with the
/// natural magnitude it is normalized by.
struct IdentityResidual {
  std::string name;
  double value = 0.0;
  double scale = 1.0;
  double relative = 0.0;
};

/// Boundary observation iint_{Gamma x (0,T)} (dr phi)^2 dS dt: Simpson in t,
/// exact angular integration through orthonormality of the angular factors.
double observe_boundary(const Trajectory& traj, const SpectralBasis& basis);

/// Strip observation iint_{omega x (0,T)} [phi^2 + (dt phi)^2 +
/// A grad phi . grad phi]: Simpson in t; in theta, composite Simpson with
/// nodes_per_component intervals per component of I_omega, fields synthesized
/// directly at the quadrature angles (no interpolation).
double observe_strip(const Trajectory& traj, const SpectralBasis& basis, const Geometry& geom,
                     int nodes_per_component = 64);

/// Evolves homogeneously and assembles the full report.
ObservationReport observability_report(const InitialData& init, const ModelParams& params,
                                       const SpectralBasis& basis);

struct ConstantEstimate {
  double c_emp = 0.0;
  std::vector<std::size_t> excluded;  ///< members with zero denominator
  std::vector<ObservationReport> reports;
};

/// C_emp = max over the family of ratio_mixed; zero-denominator members are
/// excluded and reported. Throws on an empty family.
ConstantEstimate estimate_constant(const std::vector<InitialData>& family,
                                   const ModelParams& params, const SpectralBasis& basis);

/// Hardy (alpha in (1,2)) / Poincare (alpha = 1) check: lhs = int r^(alpha-2) u^2
/// (resp. int u^2), rhs = int r^alpha (dr u)^2, paper constant 4/(alpha-1)^2
/// (resp. 8). Requires u to vanish in the last radial cell (trace condition);
/// violated preconditions throw.
HardyReport hardy_check(const GridField& u, double alpha);

/// Pointwise products with zeta and the forcing field g; dphi_dtheta must be
/// the angular derivative of phi on the same grid.
CutoffDecomposition cutoff_decompose(const GridField& phi, const GridField& dphi_dtheta,
                                     const ModelParams& params);
/// Convenience overload: angular derivative taken spectrally from phi.
CutoffDecomposition cutoff_decompose(const GridField& phi, const ModelParams& params);

/// Full multiplier audit of a homogeneous trajectory. dtt psi is the exact
/// modal second derivative (zeta times -lambda-weighted synthesis); spatial
/// derivatives of psi use the product rule with analytic zeta', zeta''. B2
/// discretizes div(A grad psi) by the cell-centered product rule
/// alpha r^(alpha-1) dr psi + r^alpha drr psi + dthth psi, independent of the
/// exactly-diagonalized flux form, so residual_rel measures genuine
/// discretization error and refines under grid refinement.
MultiplierAudit multiplier_audit(const Trajectory& traj, const ModelParams& params,
                                 const SpectralBasis& basis);

/// Discrete evaluations of the six localization identities for psi: the five
/// vanishing ones (angular derivatives integrate to zero exactly on the
/// periodic grid; radial telescoping hits zero boundary face values) and the
/// sixth compared against the discrete boundary observation of psi.
std::vector<IdentityResidual> identity_audit(const Trajectory& traj, const ModelParams& params,
                                             const SpectralBasis& basis);

struct QuasimodeRow {
  QuasimodeSpec spec;
  double mass = 0.0;        ///< L2 fraction of the datum captured by the basis
  bool mass_ok = false;     ///< mass >= 0.99
  double boundary_slope = 0.0;  ///< max |dr (projected datum)| at r = 1
  ObservationReport report;
};

/// Projects each quasimode datum onto the basis, evolves homogeneously, and
/// reports observations plus the projection-mass check.
std::vector<QuasimodeRow> quasimode_sweep(const std::vector<QuasimodeSpec>& specs,
                                          const ModelParams& params, const SpectralBasis& basis);

/// O_Gamma / (|phi0|_{H1,w}^2 + |phi1|_{L2}^2) with modal Parseval norms;
/// zero data yields 0.
double hidden_regularity_ratio(const Trajectory& traj, const InitialData& init,
                               const SpectralBasis& basis);

/// Energy of a grid-sampled pair (u, v) = (phi, dt phi):
/// 1/2 int [v^2 + (d_theta u)^2 + r^alpha (d_r u)^2] with spectral angular and
/// face-form radial derivatives. Used for the psi/xi split audits.
double grid_energy(const GridField& u, const GridField& v, double alpha);

}  // namespace degenwave
