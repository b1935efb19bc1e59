#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "degenwave/basis.hpp"
#include "degenwave/quadrature.hpp"

using namespace degenwave;

namespace {

// Independent oracle: zeros of J0 by bisection of std::cyl_bessel_j; the
// continuum radial problem -(r u')' = lambda u, u(1) = 0, bounded at 0 has
// eigenfunctions J0(2 sqrt(lambda r)) and eigenvalues j_{0,k}^2 / 4.
double bessel_j0_zero(int k) {
  // zeros are within +-1 of the asymptotic location (k - 1/4) pi
  double lo = (k - 0.75) * std::numbers::pi;
  double hi = (k + 0.25) * std::numbers::pi;
  auto f = [](double x) { return std::cyl_bessel_j(0.0, x); };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0) == (f(mid) < 0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SpectralBasis small_basis(double alpha, int n_theta, int n_r, int k_max) {
  ModelParams p;
  p.alpha = alpha;
  p.n_theta = n_theta;
  p.n_r = n_r;
  p.k_max = k_max;
  return assemble_basis(p, build_radial_grid(n_r));
}

}  // namespace

TEST_CASE("bessel oracle: alpha=1, n=0, M=1024") {
  // frozen from the oracle above; j_{0,k} = 2.404825557695773,
  // 5.520078110286311, 8.653727912911013
  const double frozen[3] = {1.4457964907366961, 7.6178155859155218, 18.721751697673791};
  for (int k = 1; k <= 3; ++k) {
    const double z = bessel_j0_zero(k);
    CHECK(z * z / 4.0 == doctest::Approx(frozen[k - 1]).epsilon(1e-12));
  }

  const ModeOperator op = assemble_mode_operator(build_radial_grid(1024), 1.0, 0);
  const RadialEigenSystem sys = solve_mode_spectrum(op, 5);
  for (int k = 0; k < 3; ++k)
    CHECK(sys.lambdas[k] == doctest::Approx(frozen[k]).epsilon(1e-3));

  SUBCASE("strictly increasing, sign-fixed, orthonormal") {
    for (int k = 0; k + 1 < 5; ++k) CHECK(sys.lambdas[k] < sys.lambdas[k + 1]);
    for (int k = 0; k < 5; ++k) CHECK(sys.vectors[k][0] > 0.0);
    const double h = 1.0 / 1024;
    for (int k = 0; k < 5; ++k)
      for (int l = k; l < 5; ++l) {
        double dot = 0.0;
        for (int j = 0; j < 1024; ++j) dot += sys.vectors[k][j] * sys.vectors[l][j];
        CHECK(std::abs(dot * h - (k == l ? 1.0 : 0.0)) < 1e-10);
      }
  }

  SUBCASE("boundary slopes: ground mode negative, magnitudes j0k/2") {
    // continuum |R'(1)| = j_{0,k}/2 for unit-L2 eigenfunctions
    CHECK(sys.boundary_slopes[0] < 0.0);
    for (int k = 0; k < 5; ++k)
      CHECK(std::abs(sys.boundary_slopes[k]) ==
            doctest::Approx(bessel_j0_zero(k + 1) / 2.0).epsilon(1e-2));
  }
}

TEST_CASE("operator shift: lambda_{n,k} = lambda_{0,k} + n^2") {
  const RadialGrid grid = build_radial_grid(256);
  const auto sys0 = solve_mode_spectrum(assemble_mode_operator(grid, 1.25, 0), 6);
  const auto sys5 = solve_mode_spectrum(assemble_mode_operator(grid, 1.25, 5), 6);
  for (int k = 0; k < 6; ++k)
    CHECK(sys5.lambdas[k] - sys0.lambdas[k] ==
          doctest::Approx(25.0).epsilon(1e-11));
}

TEST_CASE("both eigensolver routes agree") {
  const RadialGrid grid = build_radial_grid(64);
  const ModeOperator op = assemble_mode_operator(grid, 1.5, 2);
  const auto low = solve_mode_spectrum(op, 6);    // 6 <= 64/8: bisection route
  const auto full = solve_mode_spectrum(op, 32);  // 32 > 64/8: QL route
  for (int k = 0; k < 6; ++k) {
    CHECK(low.lambdas[k] == doctest::Approx(full.lambdas[k]).epsilon(1e-12));
    double dot = 0.0;
    for (int j = 0; j < 64; ++j) dot += low.vectors[k][j] * full.vectors[k][j];
    CHECK(std::abs(dot / 64.0) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("convergence toward the continuum spectrum is about second order") {
  double l1[3];
  int idx = 0;
  for (int m : {128, 256, 512}) {
    const auto sys = solve_mode_spectrum(assemble_mode_operator(build_radial_grid(m), 1.0, 0), 5);
    l1[idx++] = sys.lambdas[4];  // hardest retained mode
  }
  const double order = std::log2(std::abs(l1[0] - l1[1]) / std::abs(l1[1] - l1[2]));
  CHECK(order >= 1.8);
}

TEST_CASE("basis enumeration and counting") {
  SUBCASE("N=0 keeps only angularly constant elements") {
    const SpectralBasis basis = small_basis(1.0, 0, 32, 3);
    CHECK(basis.count() == 3);
    for (int b = 0; b < 3; ++b) {
      CHECK(basis.index(b).mode == 0);
      CHECK(basis.index(b).branch == AngularBranch::cos_branch);
    }
  }
  SUBCASE("N=2, k_max=4 gives 20 elements; flat/index round-trip") {
    const SpectralBasis basis = small_basis(1.5, 2, 32, 4);
    CHECK(basis.count() == 20);
    for (int b = 0; b < 20; ++b) CHECK(basis.flat(basis.index(b)) == b);
  }
}

TEST_CASE("2D orthonormality spot-check") {
  const SpectralBasis basis = small_basis(1.5, 4, 64, 4);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, basis.count() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const int a = pick(rng), b = pick(rng);
    ModalCoeffs ca(basis.count(), 0.0), cb(basis.count(), 0.0);
    ca[a] = 1.0;
    cb[b] = 1.0;
    const double gram = inner_l2(from_modal(ca, basis), from_modal(cb, basis));
    CHECK(std::abs(gram - (a == b ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("modal transforms") {
  const SpectralBasis basis = small_basis(1.25, 3, 64, 5);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss;

  SUBCASE("indicator recovery and zero field") {
    ModalCoeffs c(basis.count(), 0.0);
    c[7] = 1.0;
    const auto back = to_modal(from_modal(c, basis), basis);
    for (int b = 0; b < basis.count(); ++b)
      CHECK(std::abs(back[b] - c[b]) < 1e-10);
    const GridField zero(basis.angular_samples(), 64);
    for (double v : to_modal(zero, basis)) CHECK(v == 0.0);
  }

  SUBCASE("round trip, Parseval, linearity") {
    ModalCoeffs c(basis.count());
    for (double& x : c) x = gauss(rng);
    const GridField u = from_modal(c, basis);
    const auto back = to_modal(u, basis);
    double csq = 0.0;
    for (int b = 0; b < basis.count(); ++b) {
      CHECK(std::abs(back[b] - c[b]) < 1e-10);
      csq += c[b] * c[b];
    }
    CHECK(inner_l2(u, u) == doctest::Approx(csq).epsilon(1e-8));

    ModalCoeffs d(basis.count());
    for (double& x : d) x = gauss(rng);
    ModalCoeffs lin(basis.count());
    for (int b = 0; b < basis.count(); ++b) lin[b] = 2.0 * c[b] - 3.0 * d[b];
    const GridField ulin = from_modal(lin, basis);
    const GridField ud = from_modal(d, basis);
    for (std::size_t i = 0; i < ulin.values.size(); ++i)
      CHECK(ulin.values[i] ==
            doctest::Approx(2.0 * u.values[i] - 3.0 * ud.values[i]).epsilon(1e-11));
  }

  SUBCASE("H1 Parseval with lambda weights") {
    ModalCoeffs c(basis.count());
    for (double& x : c) x = gauss(rng);
    const GridField u = from_modal(c, basis);
    double modal = 0.0;
    for (int b = 0; b < basis.count(); ++b) modal += basis.lambda(b) * c[b] * c[b];
    CHECK(inner_h1w(u, u, 1.25) == doctest::Approx(modal).epsilon(1e-8));
  }
}

TEST_CASE("operator diagonalization through the basis") {
  const SpectralBasis basis = small_basis(1.5, 2, 128, 6);
  const ModeOperator op = assemble_mode_operator(basis.grid(), 1.5, 2);
  const auto& sys = basis.system(2);
  for (int k = 0; k < 6; ++k) {
    const auto lv = apply_mode_operator(op, sys.vectors[k]);
    for (int j = 0; j < 128; ++j)
      CHECK(lv[j] == doctest::Approx(sys.lambdas[k] * sys.vectors[k][j])
                         .epsilon(1e-9)
                         .scale(std::abs(sys.lambdas[k])));
  }
}

TEST_CASE("lambda ordering helper and positivity") {
  const SpectralBasis basis = small_basis(1.0, 3, 64, 4);
  const auto order = basis.by_ascending_lambda();
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    CHECK(basis.lambda(order[i]) <= basis.lambda(order[i + 1]));
  for (int b = 0; b < basis.count(); ++b) {
    CHECK(basis.lambda(b) > 0.0);
    const int n = basis.index(b).mode;
    if (n >= 1) CHECK(basis.lambda(b) > n * n);
  }
}
