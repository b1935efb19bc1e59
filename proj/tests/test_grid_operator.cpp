#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "degenwave/eigen.hpp"
#include "degenwave/fft.hpp"
#include "degenwave/mode_operator.hpp"
#include "degenwave/quadrature.hpp"
#include "degenwave/verify.hpp"

using namespace degenwave;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("radial grid layout") {
  const RadialGrid g = build_radial_grid(4);
  CHECK(g.h == 0.25);
  CHECK(g.center(0) == doctest::Approx(0.125).epsilon(1e-16));
  CHECK(g.center(3) == doctest::Approx(0.875).epsilon(1e-16));
  CHECK(g.face(0) == 0.0);
  CHECK(g.face(2) == doctest::Approx(0.5).epsilon(1e-16));
  CHECK(g.face(4) == 1.0);
  CHECK_THROWS_AS(build_radial_grid(3), std::invalid_argument);
}

TEST_CASE("mode operator structure") {
  const RadialGrid g = build_radial_grid(32);

  SUBCASE("interior rows annihilate constants") {
    const ModeOperator op = assemble_mode_operator(g, 1.3, 0);
    std::vector<double> ones(32, 1.0);
    const auto y = apply_mode_operator(op, ones);
    for (int j = 0; j + 1 < 32; ++j) CHECK(y[j] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(y[31] > 0.0);  // Dirichlet row feels the ghost
  }

  SUBCASE("n^2 shift on the diagonal") {
    const ModeOperator op0 = assemble_mode_operator(g, 1.5, 0);
    const ModeOperator op3 = assemble_mode_operator(g, 1.5, 3);
    for (int j = 0; j < 32; ++j) CHECK(op3.diag[j] - op0.diag[j] == 9.0);
    for (int j = 0; j + 1 < 32; ++j) CHECK(op3.off[j] == op0.off[j]);
  }

  SUBCASE("Stieltjes sign pattern and zero degenerate flux") {
    const ModeOperator op = assemble_mode_operator(g, 1.0, 2);
    for (double o : op.off) CHECK(o <= 0.0);
    // first row only couples upward: the r = 0 face carries weight 0
    CHECK(op.diag[0] == doctest::Approx(-op.off[0] + 4.0).epsilon(1e-12));
  }

  SUBCASE("apply: zero vector, dimension mismatch") {
    const ModeOperator op = assemble_mode_operator(g, 1.0, 1);
    std::vector<double> z(32, 0.0);
    for (double v : apply_mode_operator(op, z)) CHECK(v == 0.0);
    std::vector<double> bad(31, 0.0);
    CHECK_THROWS_AS(apply_mode_operator(op, bad), std::invalid_argument);
  }

  SUBCASE("symmetry on random pairs, and an injected flux fault is caught by name") {
    const ModeOperator op = assemble_mode_operator(g, 1.5, 1);
    const CheckResult ok = check_operator_symmetry(op, 7, 100, 1e-12);
    CHECK(ok.passed);
    CHECK(ok.name == "operator_symmetry_n1");

    // sign-flip one face flux in the upward coupling only
    auto faulted = [&op](std::span<const double> in, std::span<double> out) {
      apply_mode_operator(op, in, out);
      out[5] -= 2.0 * op.off[5] * in[6];
    };
    const CheckResult bad = check_apply_symmetry("operator_symmetry_n1", faulted, op.size(),
                                                 op.grid.h, operator_norm1(op), 7, 10, 1e-12);
    CHECK(!bad.passed);
    CHECK(bad.name.find("operator_symmetry") != std::string::npos);
  }
}

TEST_CASE("bessel oracle for the smallest eigenvalue (alpha=1)") {
  const RadialGrid g = build_radial_grid(1024);
  const ModeOperator op = assemble_mode_operator(g, 1.0, 0);
  const RadialEigenSystem sys = solve_mode_spectrum(op, 3);
  // continuum problem -(r u')' = lambda u, u(1)=0: lambda_1 = j01^2/4
  CHECK(sys.lambdas[0] == doctest::Approx(1.445796).epsilon(1e-3));
}

TEST_CASE("discrete L2 inner product") {
  GridField ones(16, 8);
  for (double& v : ones.values) v = 1.0;
  CHECK(inner_l2(ones, ones) == doctest::Approx(2.0 * kPi).epsilon(1e-14));

  GridField s(16, 8), c(16, 8);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 8; ++j) {
      s.at(i, j) = std::sin(s.theta(i));
      c.at(i, j) = std::cos(s.theta(i));
    }
  CHECK(inner_l2(s, c) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(inner_l2(s, s) >= 0.0);

  SUBCASE("trigonometric quadrature is exact below the grid bandwidth") {
    // cos(n theta) cos(m theta), radially constant: inner_l2 = pi delta_nm
    // exactly whenever n + m < P
    const int p = 16;
    for (int n : {1, 3}) {
      for (int m : {1, 3, 5}) {
        GridField a(p, 4), b(p, 4);
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < 4; ++j) {
            a.at(i, j) = std::cos(n * a.theta(i));
            b.at(i, j) = std::cos(m * b.theta(i));
          }
        const double expect = (n == m) ? kPi : 0.0;
        CHECK(inner_l2(a, b) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
  }

  SUBCASE("dimension mismatch") {
    GridField a(16, 8), b(16, 9);
    CHECK_THROWS_AS(inner_l2(a, b), std::invalid_argument);
  }
}

TEST_CASE("weighted H1 form") {
  GridField z(12, 16);
  CHECK(inner_h1w(z, z, 1.5) == 0.0);

  SUBCASE("bilinearity") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    GridField u(12, 16), w(12, 16), v(12, 16);
    for (auto* f : {&u, &w, &v})
      for (double& x : f->values) x = gauss(rng);
    const double a = 1.7, b = -0.4;
    GridField lin(12, 16);
    for (std::size_t i = 0; i < lin.values.size(); ++i)
      lin.values[i] = a * u.values[i] + b * w.values[i];
    CHECK(inner_h1w(lin, v, 1.5) ==
          doctest::Approx(a * inner_h1w(u, v, 1.5) + b * inner_h1w(w, v, 1.5)).epsilon(1e-12));
  }
}

TEST_CASE("boundary derivative trace") {
  SUBCASE("zero field") {
    GridField z(8, 16);
    for (double v : boundary_derivative(z)) CHECK(v == 0.0);
  }

  SUBCASE("u = 1 - r is exact") {
    GridField u(8, 16);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 16; ++j) u.at(i, j) = 1.0 - (j + 0.5) / 16.0;
    for (double v : boundary_derivative(u)) CHECK(v == doctest::Approx(-1.0).epsilon(1e-14));
  }
}

TEST_CASE("spectral theta derivative") {
  const int p = 16;
  std::vector<double> f(p), expect(p);
  for (int i = 0; i < p; ++i) {
    const double theta = 2.0 * kPi * i / p;
    f[i] = std::sin(3.0 * theta);
    expect[i] = 3.0 * std::cos(3.0 * theta);
  }
  const auto d = spectral_theta_derivative(f);
  for (int i = 0; i < p; ++i) CHECK(d[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  // the mean of a spectral derivative vanishes for arbitrary data
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  std::vector<double> noise(24);  // non power of two exercises the DFT path
  for (double& x : noise) x = gauss(rng);
  double mean = 0.0;
  for (double x : spectral_theta_derivative(noise)) mean += x;
  CHECK(std::abs(mean) < 1e-12);
}

TEST_CASE("simpson weights") {
  CHECK_THROWS_AS(simpson_weights(3, 0.1), std::invalid_argument);
  std::vector<double> cubic(9);
  for (int i = 0; i <= 8; ++i) {
    const double x = i / 8.0;
    cubic[i] = x * x * x - 2.0 * x;
  }
  CHECK(integrate_simpson(cubic, 1.0 / 8.0) == doctest::Approx(0.25 - 1.0).epsilon(1e-14));
}
