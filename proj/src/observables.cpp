#include "degenwave/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "degenwave/fft.hpp"
#include "degenwave/profiles.hpp"
#include "degenwave/quadrature.hpp"

namespace degenwave {

namespace {

constexpr double kFloor = 1e-30;  // avoids 0/0 in residual ratios

double safe_ratio(double num, double den) {
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return num > 0.0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  }
  return num / den;
}

std::vector<double> face_weights(const RadialGrid& grid, double alpha) {
  // faces r = (j+1)h for j = 0..M-1; the last is the Dirichlet face r = 1,
  // whose half-cell measure h/2 is folded into the weight so that face sums
  // times h match the quadratic form of the mode operator
  std::vector<double> w(grid.cell_count);
  for (int j = 0; j + 1 < grid.cell_count; ++j) w[j] = std::pow(grid.face(j + 1), alpha);
  w[grid.cell_count - 1] = 0.5;
  return w;
}

}  // namespace

double observe_boundary(const Trajectory& traj, const SpectralBasis& basis) {
  const int k_max = basis.radial_count();
  std::vector<double> integrand(traj.states.size());
  for (std::size_t m = 0; m < traj.states.size(); ++m) {
    const auto& a = traj.states[m].a;
    double total = 0.0;
    for (int n = 0; n <= basis.modes(); ++n) {
      const auto& slopes = basis.system(n).boundary_slopes;
      const int branches = (n == 0) ? 1 : 2;
      for (int br = 0; br < branches; ++br) {
        const int b0 = basis.flat(
            {br == 0 ? AngularBranch::cos_branch : AngularBranch::sin_branch, n, 0});
        double s = 0.0;
        for (int k = 0; k < k_max; ++k) s += a[b0 + k] * slopes[k];
        total += s * s;
      }
    }
    integrand[m] = total;
  }
  return integrate_simpson(integrand, traj.t_final / traj.n_t);
}

double observe_strip(const Trajectory& traj, const SpectralBasis& basis, const Geometry& geom,
                     int nodes_per_component) {
  if (nodes_per_component < 64) nodes_per_component = 64;
  if (nodes_per_component % 2 != 0) ++nodes_per_component;
  const RadialGrid& grid = basis.grid();
  const int m_cells = grid.cell_count;
  const double h = grid.h;
  const double alpha = basis.params().alpha;
  const auto wf = face_weights(grid, alpha);

  // theta quadrature nodes and weights over both components of I_omega
  std::vector<double> nodes, weights;
  for (const auto& comp : geom.strip_components()) {
    const double step = comp.length() / nodes_per_component;
    const auto w = simpson_weights(nodes_per_component, step);
    for (int q = 0; q <= nodes_per_component; ++q) {
      nodes.push_back(comp.lo + q * step);
      weights.push_back(w[q]);
    }
  }

  std::vector<double> col(m_cells), colv(m_cells), colth(m_cells);
  std::vector<double> integrand(traj.states.size());
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const auto pos = radial_profiles(traj.states[s].a, basis);
    const auto vel = radial_profiles(traj.states[s].adot, basis);
    double acc_t = 0.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double theta = nodes[q];
      std::fill(col.begin(), col.end(), 0.0);
      std::fill(colv.begin(), colv.end(), 0.0);
      std::fill(colth.begin(), colth.end(), 0.0);
      for (const auto& g : pos) {
        const double a = group_angular(g, theta);
        const double a1 = group_angular_d1(g, theta);
        for (int j = 0; j < m_cells; ++j) {
          col[j] += a * g.profile[j];
          colth[j] += a1 * g.profile[j];
        }
      }
      for (const auto& g : vel) {
        const double a = group_angular(g, theta);
        for (int j = 0; j < m_cells; ++j) colv[j] += a * g.profile[j];
      }
      double spatial = 0.0;
      for (int j = 0; j < m_cells; ++j)
        spatial += (col[j] * col[j] + colv[j] * colv[j] + colth[j] * colth[j]) * h;
      for (int j = 0; j + 1 < m_cells; ++j) {
        const double slope = (col[j + 1] - col[j]) / h;
        spatial += wf[j] * slope * slope * h;
      }
      const double top = -col[m_cells - 1] / (0.5 * h);
      spatial += wf[m_cells - 1] * top * top * h;
      acc_t += weights[q] * spatial;
    }
    integrand[s] = acc_t;
  }
  return integrate_simpson(integrand, traj.t_final / traj.n_t);
}

ObservationReport observability_report(const InitialData& init, const ModelParams& params,
                                       const SpectralBasis& basis) {
  ObservationReport rep;
  rep.below_threshold = !(params.t_final > params.time_threshold());
  const Trajectory traj = sample_trajectory(init, nullptr, basis, params.t_final, params.n_t);
  rep.E0 = energy(traj.states.front(), basis);
  if (rep.E0 == 0.0) return rep;
  rep.O_Gamma = observe_boundary(traj, basis);
  rep.O_omega = observe_strip(traj, basis, make_geometry(params.delta0));
  rep.threshold_term = ((2.0 - params.alpha) * params.t_final - std::sqrt(2.0)) * rep.E0;
  rep.ratio_mixed = safe_ratio(rep.threshold_term, rep.O_Gamma + rep.O_omega);
  rep.ratio_top_only = safe_ratio(rep.threshold_term, rep.O_Gamma);
  return rep;
}

ConstantEstimate estimate_constant(const std::vector<InitialData>& family,
                                   const ModelParams& params, const SpectralBasis& basis) {
  if (family.empty()) throw std::invalid_argument("estimate_constant: empty family");
  ConstantEstimate est;
  est.reports.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const ObservationReport rep = observability_report(family[i], params, basis);
    est.reports.push_back(rep);
    if (rep.O_Gamma + rep.O_omega == 0.0) {
      est.excluded.push_back(i);
      continue;
    }
    est.c_emp = std::max(est.c_emp, rep.ratio_mixed);
  }
  return est;
}

HardyReport hardy_check(const GridField& u, double alpha) {
  if (!(alpha >= 1.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in [1,2)");
  const int p = u.n_angular, m = u.n_radial;
  const double h = u.radial_spacing();
  const double dtheta = u.angular_spacing();

  // Trace condition u = 0 on Gamma: accept fields that vanish in the last
  // cell outright; otherwise require the ghost boundary slope to stay on the
  // scale of the interior slopes (a field with a genuinely nonzero trace has
  // a ghost slope ~ 2|u|/h that dwarfs them).
  double peak = 0.0, last = 0.0, interior_slope = 0.0, ghost_slope = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < m; ++j) peak = std::max(peak, std::abs(u.at(i, j)));
    for (int j = 0; j + 1 < m; ++j)
      interior_slope = std::max(interior_slope, std::abs(u.at(i, j + 1) - u.at(i, j)) / h);
    last = std::max(last, std::abs(u.at(i, m - 1)));
    ghost_slope = std::max(ghost_slope, std::abs(u.at(i, m - 1)) / (0.5 * h));
  }
  if (last > 1e-8 * peak && ghost_slope > 10.0 * (interior_slope + 1e-12 * peak / h))
    throw std::invalid_argument("hardy_check: field does not vanish at r = 1");

  HardyReport rep;
  rep.alpha = alpha;
  rep.paper_constant = (alpha == 1.0) ? 8.0 : 4.0 / ((alpha - 1.0) * (alpha - 1.0));

  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < m; ++j) {
      const double r = (j + 0.5) * h;
      const double cell = u.at(i, j) * u.at(i, j);
      rep.lhs += (alpha == 1.0 ? cell : std::pow(r, alpha - 2.0) * cell) * h * dtheta;
    }
    for (int j = 0; j + 1 < m; ++j) {
      const double slope = (u.at(i, j + 1) - u.at(i, j)) / h;
      rep.rhs += std::pow((j + 1) * h, alpha) * slope * slope * h * dtheta;
    }
    const double top = -u.at(i, m - 1) / (0.5 * h);
    rep.rhs += top * top * (0.5 * h) * dtheta;
  }
  rep.satisfied = rep.lhs <= rep.paper_constant * rep.rhs * (1.0 + 1e-8);
  return rep;
}

CutoffDecomposition cutoff_decompose(const GridField& phi, const GridField& dphi_dtheta,
                                     const ModelParams& params) {
  if (phi.n_angular != dphi_dtheta.n_angular || phi.n_radial != dphi_dtheta.n_radial)
    throw std::invalid_argument("cutoff_decompose: dimension mismatch");
  const int p = phi.n_angular, m = phi.n_radial;
  CutoffDecomposition out{GridField(p, m), GridField(p, m), GridField(p, m)};
  for (int i = 0; i < p; ++i) {
    const double theta = phi.theta(i);
    const double z = cutoff_zeta(theta, params.delta0);
    const double z1 = cutoff_zeta_d1(theta, params.delta0);
    const double z2 = cutoff_zeta_d2(theta, params.delta0);
    for (int j = 0; j < m; ++j) {
      const double f = phi.at(i, j);
      out.psi.at(i, j) = z * f;
      out.xi.at(i, j) = (1.0 - z) * f;
      out.g.at(i, j) = -2.0 * z1 * dphi_dtheta.at(i, j) - z2 * f;
    }
  }
  return out;
}

CutoffDecomposition cutoff_decompose(const GridField& phi, const ModelParams& params) {
  GridField dphi(phi.n_angular, phi.n_radial);
  SpectralDifferentiator diff(phi.n_angular);
  std::vector<double> col(phi.n_angular), dcol(phi.n_angular);
  for (int j = 0; j < phi.n_radial; ++j) {
    for (int i = 0; i < phi.n_angular; ++i) col[i] = phi.at(i, j);
    diff.derivative(col, dcol);
    for (int i = 0; i < phi.n_angular; ++i) dphi.at(i, j) = dcol[i];
  }
  return cutoff_decompose(phi, dphi, params);
}

namespace {

// Radial columns of one state at an arbitrary angle, plus derived slopes.
struct ColumnWork {
  std::vector<double> phi, vphi, aphi, thphi, ththphi;
  std::vector<double> sface, cslope, d2r;

  explicit ColumnWork(int m)
      : phi(m), vphi(m), aphi(m), thphi(m), ththphi(m), sface(m), cslope(m), d2r(m) {}

  void synthesize(double theta, const std::vector<SynthGroup>& pos,
                  const std::vector<SynthGroup>& vel, const std::vector<SynthGroup>& acc,
                  double h) {
    const int m = static_cast<int>(phi.size());
    std::fill(phi.begin(), phi.end(), 0.0);
    std::fill(vphi.begin(), vphi.end(), 0.0);
    std::fill(aphi.begin(), aphi.end(), 0.0);
    std::fill(thphi.begin(), thphi.end(), 0.0);
    std::fill(ththphi.begin(), ththphi.end(), 0.0);
    for (const auto& g : pos) {
      const double a = group_angular(g, theta);
      const double a1 = group_angular_d1(g, theta);
      const double a2 = -static_cast<double>(g.mode) * g.mode * a;
      for (int j = 0; j < m; ++j) {
        phi[j] += a * g.profile[j];
        thphi[j] += a1 * g.profile[j];
        ththphi[j] += a2 * g.profile[j];
      }
    }
    for (const auto& g : vel) {
      const double a = group_angular(g, theta);
      for (int j = 0; j < m; ++j) vphi[j] += a * g.profile[j];
    }
    for (const auto& g : acc) {
      const double a = group_angular(g, theta);
      for (int j = 0; j < m; ++j) aphi[j] += a * g.profile[j];
    }
    for (int j = 0; j + 1 < m; ++j) sface[j] = (phi[j + 1] - phi[j]) / h;
    sface[m - 1] = -phi[m - 1] / (0.5 * h);
    cslope[0] = sface[0];
    for (int j = 1; j < m; ++j) cslope[j] = 0.5 * (sface[j - 1] + sface[j]);
    d2r[0] = (sface[1] - sface[0]) / h;
    for (int j = 1; j < m; ++j) d2r[j] = (sface[j] - sface[j - 1]) / h;
  }
};

struct StateGroups {
  std::vector<SynthGroup> pos, vel, acc;
};

StateGroups state_groups(const ModalState& state, const SpectralBasis& basis) {
  StateGroups g;
  g.pos = radial_profiles(state.a, basis);
  g.vel = radial_profiles(state.adot, basis);
  ModalCoeffs acc_coeffs(state.a.size());
  for (std::size_t b = 0; b < state.a.size(); ++b)
    acc_coeffs[b] = -basis.lambda(static_cast<int>(b)) * state.a[b];
  g.acc = radial_profiles(acc_coeffs, basis);
  return g;
}

// Multiplier-side time samples, integrated in theta over the cut-off support
// (dense Simpson in each transition band, Simpson scaling with n_theta on the
// zeta = 1 plateau; the bands are narrower than the uniform grid spacing, so
// fields are synthesized directly at the quadrature angles).
struct MultiplierSamples {
  std::vector<double> b1, b2, b3;
  std::vector<double> x;                    // int (dt psi)(H.grad psi) dz
  std::vector<double> dtpsi_sq, dthpsi_sq;  // int (dt psi)^2, int (dth psi)^2
  std::vector<double> wgrad;                // int r^alpha (dr psi)^2 (face form)
  std::vector<double> gamma;                // int_Gamma (dr psi)^2 dtheta
  std::vector<double> gdtpsi;               // int g dt psi dz
};

MultiplierSamples accumulate_multiplier(const Trajectory& traj, const ModelParams& params,
                                        const SpectralBasis& basis) {
  const RadialGrid& grid = basis.grid();
  const int m = grid.cell_count;
  const double h = grid.h;
  const double d0 = params.delta0;
  const double two_pi = 2.0 * std::numbers::pi;
  const double alpha = params.alpha;
  const std::size_t steps = traj.states.size();
  const auto wf = face_weights(grid, alpha);

  // theta quadrature nodes: [2 d0, 3 d0], [3 d0, 2pi - 3 d0], [2pi - 3 d0,
  // 2pi - 2 d0]; psi vanishes outside
  std::vector<double> nodes, weights;
  auto add_panel = [&](double lo, double hi, int intervals) {
    const double step = (hi - lo) / intervals;
    const auto w = simpson_weights(intervals, step);
    for (int q = 0; q <= intervals; ++q) {
      nodes.push_back(lo + q * step);
      weights.push_back(w[q]);
    }
  };
  const int band_intervals = 64;
  int plateau_intervals = 8 * std::max(params.n_theta, 8);
  add_panel(2.0 * d0, 3.0 * d0, band_intervals);
  add_panel(3.0 * d0, two_pi - 3.0 * d0, plateau_intervals);
  add_panel(two_pi - 3.0 * d0, two_pi - 2.0 * d0, band_intervals);

  std::vector<double> rc(m), rpow_am1(m), rpow_a(m);
  for (int j = 0; j < m; ++j) {
    rc[j] = grid.center(j);
    rpow_am1[j] = std::pow(rc[j], alpha - 1.0);
    rpow_a[j] = std::pow(rc[j], alpha);
  }

  MultiplierSamples out;
  auto sized = [&](std::vector<double>& v) { v.assign(steps, 0.0); };
  sized(out.b1); sized(out.b2); sized(out.b3); sized(out.x);
  sized(out.dtpsi_sq); sized(out.dthpsi_sq); sized(out.wgrad); sized(out.gamma);
  sized(out.gdtpsi);

  ColumnWork col(m);
  for (std::size_t s = 0; s < steps; ++s) {
    const StateGroups groups = state_groups(traj.states[s], basis);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const double theta = nodes[q];
      const double wq = weights[q];
      col.synthesize(theta, groups.pos, groups.vel, groups.acc, h);
      const double z = cutoff_zeta(theta, d0);
      const double z1 = cutoff_zeta_d1(theta, d0);
      const double z2 = cutoff_zeta_d2(theta, d0);
      const double hmult = theta - std::numbers::pi;
      double b1_q = 0.0, b2_q = 0.0, b3_q = 0.0, x_q = 0.0;
      double dtps_q = 0.0, dthps_q = 0.0, wg_q = 0.0, gdt_q = 0.0;
      for (int j = 0; j < m; ++j) {
        const double dtpsi = z * col.vphi[j];
        const double ddtpsi = z * col.aphi[j];
        const double dthpsi = z1 * col.phi[j] + z * col.thphi[j];
        const double ddthpsi = z2 * col.phi[j] + 2.0 * z1 * col.thphi[j] + z * col.ththphi[j];
        const double drpsi = z * col.cslope[j];
        const double drrpsi = z * col.d2r[j];
        const double gval = -2.0 * z1 * col.thphi[j] - z2 * col.phi[j];
        const double hgrad = hmult * dthpsi + rc[j] * drpsi;
        const double div_psi = ddthpsi + alpha * rpow_am1[j] * drpsi + rpow_a[j] * drrpsi;
        b1_q += ddtpsi * hgrad;
        b2_q -= div_psi * hgrad;
        b3_q += gval * hgrad;
        x_q += dtpsi * hgrad;
        dtps_q += dtpsi * dtpsi;
        dthps_q += dthpsi * dthpsi;
        gdt_q += gval * dtpsi;
        const double spsi = z * col.sface[j];
        wg_q += wf[j] * spsi * spsi;
      }
      out.b1[s] += wq * b1_q * h;
      out.b2[s] += wq * b2_q * h;
      out.b3[s] += wq * b3_q * h;
      out.x[s] += wq * x_q * h;
      out.dtpsi_sq[s] += wq * dtps_q * h;
      out.dthpsi_sq[s] += wq * dthps_q * h;
      out.wgrad[s] += wq * wg_q * h;
      out.gdtpsi[s] += wq * gdt_q * h;
      const double bslope = z * col.sface[m - 1];
      out.gamma[s] += wq * bslope * bslope;
    }
  }
  return out;
}

// Identity audits live on the uniform grid: the angular identities vanish
// there by the structure of periodic spectral quadrature, the radial ones by
// telescoping onto zero boundary face values.
struct IdentitySamples {
  std::vector<double> val[6], scale[6];
  std::vector<double> gamma;  // boundary observation of psi on the same grid
};

IdentitySamples accumulate_identities(const Trajectory& traj, const ModelParams& params,
                                      const SpectralBasis& basis) {
  const RadialGrid& grid = basis.grid();
  const int m = grid.cell_count;
  const int p = basis.angular_samples();
  const double h = grid.h;
  const double dtheta = 2.0 * std::numbers::pi / p;
  const double mu = dtheta * h;
  const double alpha = params.alpha;
  const std::size_t steps = traj.states.size();
  const auto wf = face_weights(grid, alpha);

  std::vector<double> zeta(p), zeta1(p), zeta2(p), thetas = angular_nodes(p);
  for (int i = 0; i < p; ++i) {
    zeta[i] = cutoff_zeta(thetas[i], params.delta0);
    zeta1[i] = cutoff_zeta_d1(thetas[i], params.delta0);
    zeta2[i] = cutoff_zeta_d2(thetas[i], params.delta0);
  }
  // psi must vanish identically on the excluded bands [0, delta0] u
  // [2pi - delta0, 2pi); verified, not assumed.
  for (int i = 0; i < p; ++i) {
    const double t = thetas[i];
    if ((t <= params.delta0 || t >= 2.0 * std::numbers::pi - params.delta0) && zeta[i] != 0.0)
      throw std::runtime_error("cut-off support leaked into the excluded angular bands");
  }

  std::vector<double> rc(m), rpow_a(m), rpow_ap1(m);
  for (int j = 0; j < m; ++j) {
    rc[j] = grid.center(j);
    rpow_a[j] = std::pow(rc[j], alpha);
    rpow_ap1[j] = std::pow(rc[j], alpha + 1.0);
  }

  IdentitySamples out;
  for (int q = 0; q < 6; ++q) {
    out.val[q].assign(steps, 0.0);
    out.scale[q].assign(steps, 0.0);
  }
  out.gamma.assign(steps, 0.0);

  ColumnWork col(m);
  std::vector<double> psi_sq(static_cast<std::size_t>(p) * m);
  std::vector<double> dthpsi_sq_field(static_cast<std::size_t>(p) * m);
  std::vector<double> face_form(static_cast<std::size_t>(p) * m);
  SpectralDifferentiator diff(p);
  std::vector<double> colbuf(p), dcolbuf(p);

  for (std::size_t s = 0; s < steps; ++s) {
    const StateGroups groups = state_groups(traj.states[s], basis);
    for (int i = 0; i < p; ++i) {
      col.synthesize(thetas[i], groups.pos, groups.vel, groups.acc, h);
      const double z = zeta[i], z1 = zeta1[i];
      double i313 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double psi = z * col.phi[j];
        const double dthpsi = z1 * col.phi[j] + z * col.thphi[j];
        const double drpsi = z * col.cslope[j];
        const double drrpsi = z * col.d2r[j];
        i313 += (alpha + 1.0) * rpow_a[j] * drpsi * drpsi +
                2.0 * rpow_ap1[j] * drpsi * drrpsi;
        psi_sq[static_cast<std::size_t>(i) * m + j] = psi * psi;
        dthpsi_sq_field[static_cast<std::size_t>(i) * m + j] = dthpsi * dthpsi;
        const double spsi = z * col.sface[j];
        face_form[static_cast<std::size_t>(i) * m + j] = wf[j] * spsi * spsi;
      }
      out.val[5][s] += i313 * mu;
      const double bslope = z * col.sface[m - 1];
      out.gamma[s] += bslope * bslope * dtheta;

      // radial telescoping identities along this row: face values of r psi^2
      // and r (dth psi)^2; both boundary faces vanish (weight r at r = 0, the
      // Dirichlet trace at r = 1), so the sums audit pure cancellation.
      double tele1 = 0.0, tele1s = 0.0, tele2 = 0.0, tele2s = 0.0;
      double prev1 = 0.0, prev2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        double cur1 = 0.0, cur2 = 0.0;
        if (j < m) {
          const double rf = grid.face(j);
          const double pf = 0.5 * z * (col.phi[j - 1] + col.phi[j]);
          const double tf = 0.5 * ((z1 * col.phi[j - 1] + z * col.thphi[j - 1]) +
                                   (z1 * col.phi[j] + z * col.thphi[j]));
          cur1 = rf * pf * pf;
          cur2 = rf * tf * tf;
        }
        tele1 += cur1 - prev1;
        tele1s += std::abs(cur1 - prev1);
        tele2 += cur2 - prev2;
        tele2s += std::abs(cur2 - prev2);
        prev1 = cur1;
        prev2 = cur2;
      }
      out.val[1][s] += tele1 * dtheta;
      out.scale[1][s] += tele1s * dtheta;
      out.val[3][s] += tele2 * dtheta;
      out.scale[3][s] += tele2s * dtheta;
    }

    // angular identities: quadrature of the spectral theta-derivative over the
    // full circle, per radial cell (3.8), (3.10) and per face (3.12)
    auto angular_identity = [&](const std::vector<double>& field, int slot) {
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < p; ++i) colbuf[i] = field[static_cast<std::size_t>(i) * m + j];
        diff.derivative(colbuf, dcolbuf);
        double acc = 0.0, accs = 0.0;
        for (int i = 0; i < p; ++i) {
          acc += dcolbuf[i];
          accs += std::abs(dcolbuf[i]);
        }
        out.val[slot][s] += acc * mu;
        out.scale[slot][s] += accs * mu;
      }
    };
    angular_identity(psi_sq, 0);
    angular_identity(dthpsi_sq_field, 2);
    angular_identity(face_form, 4);
  }
  return out;
}

double simpson_of(const std::vector<double>& samples, const Trajectory& traj) {
  return integrate_simpson(samples, traj.t_final / traj.n_t);
}

}  // namespace

MultiplierAudit multiplier_audit(const Trajectory& traj, const ModelParams& params,
                                 const SpectralBasis& basis) {
  const MultiplierSamples acc = accumulate_multiplier(traj, params, basis);
  MultiplierAudit audit;
  audit.B1 = simpson_of(acc.b1, traj);
  audit.B2 = simpson_of(acc.b2, traj);
  audit.B3 = simpson_of(acc.b3, traj);
  const double scale =
      std::max({std::abs(audit.B1), std::abs(audit.B2), std::abs(audit.B3), kFloor});
  audit.residual_rel = std::abs(audit.B1 + audit.B2 - audit.B3) / scale;

  const double x_T = acc.x.back(), x_0 = acc.x.front();
  const double dtpsi_sq = simpson_of(acc.dtpsi_sq, traj);
  const double gamma_term = simpson_of(acc.gamma, traj);
  const double wgrad_term = simpson_of(acc.wgrad, traj);
  audit.b1_terms = {x_T, -x_0, dtpsi_sq, x_T - x_0 + dtpsi_sq};
  audit.b2_terms = {-0.5 * gamma_term, -0.5 * params.alpha * wgrad_term,
                    -0.5 * gamma_term - 0.5 * params.alpha * wgrad_term};
  audit.residual_ibp =
      std::abs(audit.B1 + audit.B2 - (audit.b1_terms[3] + audit.b2_terms[2])) / scale;

  const double e_0 = 0.5 * (acc.dtpsi_sq.front() + acc.dthpsi_sq.front() + acc.wgrad.front());
  const double e_T = 0.5 * (acc.dtpsi_sq.back() + acc.dthpsi_sq.back() + acc.wgrad.back());
  const double work = simpson_of(acc.gdtpsi, traj);
  audit.energy_residual =
      std::abs(e_T - e_0 - work) / std::max({e_0, e_T, std::abs(work), kFloor});
  return audit;
}

std::vector<IdentityResidual> identity_audit(const Trajectory& traj, const ModelParams& params,
                                             const SpectralBasis& basis) {
  const IdentitySamples acc = accumulate_identities(traj, params, basis);
  const char* names[6] = {"3.8", "3.9", "3.10", "3.11", "3.12", "3.13"};
  std::vector<IdentityResidual> out(6);
  for (int q = 0; q < 6; ++q) {
    out[q].name = names[q];
    const double val = simpson_of(acc.val[q], traj);
    if (q == 5) {
      const double reference = simpson_of(acc.gamma, traj);
      out[q].value = val - reference;
      out[q].scale = std::max(std::abs(reference), kFloor);
    } else {
      out[q].value = val;
      out[q].scale = std::max(simpson_of(acc.scale[q], traj), kFloor);
    }
    out[q].relative = std::abs(out[q].value) / out[q].scale;
  }
  return out;
}

std::vector<QuasimodeRow> quasimode_sweep(const std::vector<QuasimodeSpec>& specs,
                                          const ModelParams& params, const SpectralBasis& basis) {
  const RadialGrid& grid = basis.grid();
  const int m = grid.cell_count;
  const double h = grid.h;
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  std::vector<QuasimodeRow> rows;
  rows.reserve(specs.size());
  for (const auto& raw : specs) {
    const QuasimodeSpec spec = validate_quasimode(raw);
    QuasimodeRow row;
    row.spec = spec;

    std::vector<double> eta(m);
    double eta_norm_sq = 0.0;
    for (int j = 0; j < m; ++j) {
      eta[j] = bump_eta(grid.center(j), spec.eps);
      eta_norm_sq += eta[j] * eta[j] * h;
    }

    InitialData init;
    init.phi0.assign(basis.count(), 0.0);
    init.phi1.assign(basis.count(), 0.0);
    double captured = 0.0, slope_sum = 0.0;
    if (spec.n <= basis.modes()) {
      const auto& sys = basis.system(spec.n);
      for (int k = 0; k < basis.radial_count(); ++k) {
        double c = 0.0;
        for (int j = 0; j < m; ++j) c += eta[j] * sys.vectors[k][j];
        c *= h;
        captured += c * c;
        slope_sum += c * sys.boundary_slopes[k];
        init.phi0[basis.flat({AngularBranch::sin_branch, spec.n, k})] = sqrt_pi * c;
        init.phi1[basis.flat({AngularBranch::cos_branch, spec.n, k})] = -spec.n * sqrt_pi * c;
      }
    }
    row.mass = eta_norm_sq > 0.0 ? captured / eta_norm_sq : 0.0;
    row.mass_ok = row.mass >= 0.99;
    row.boundary_slope = std::abs(slope_sum);
    row.report = observability_report(init, params, basis);
    rows.push_back(std::move(row));
  }
  return rows;
}

double hidden_regularity_ratio(const Trajectory& traj, const InitialData& init,
                               const SpectralBasis& basis) {
  double norm = 0.0;
  for (int b = 0; b < basis.count(); ++b)
    norm += basis.lambda(b) * init.phi0[b] * init.phi0[b] + init.phi1[b] * init.phi1[b];
  if (norm == 0.0) return 0.0;
  return observe_boundary(traj, basis) / norm;
}

double grid_energy(const GridField& u, const GridField& v, double alpha) {
  return 0.5 * (inner_l2(v, v) + inner_h1w(u, u, alpha));
}

}  // namespace degenwave
