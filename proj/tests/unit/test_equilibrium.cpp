#include <cmath>
#include <random>

#include "doctest.h"
#include "edgetrans/equilibrium.hpp"
#include "edgetrans/errors.hpp"

using namespace edgetrans;

namespace {
const ContourSpec C2 = ContourSpec::default_for(2);
}

TEST_SUITE("equilibrium") {
  TEST_CASE("J map") {
    CHECK(std::abs(j_map(2, 0.7, 0.7, cplx(-1.0 - 1e-12, 0.0))) < 1e-3);
    CHECK(j_map(2, 1.0, 1.0, 1.0).real() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
    const double c = 0.8;
    CHECK(j_map(2, c, c, 0.5).real() == doctest::Approx(c * std::pow(3.0, 1.5) / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(j_map(2, 1.0, 1.0, -0.5), BranchCutError);
  }

  TEST_CASE("contour integrals by residue calculus") {
    const auto Vx2 = quadratic_potential(2, 0.0, 0.0);
    const auto Vrho = quadratic_potential(2, 0.0, -2.0);
    const double c = 1.0 / std::sqrt(2.0);
    // E = 2c^2 (+ rho c / 2), F = 6c^2 (+ rho c ... ), N'_In(-1) = 2c^2 + rho c
    CHECK(contour_E(c, c, Vx2, C2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contour_F(c, c, Vx2, C2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(contour_moment(c, c, Vx2, C2, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contour_E(1.0, 1.0, Vrho, C2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(contour_F(1.0, 1.0, Vrho, C2) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(contour_moment(1.0, 1.0, Vrho, C2, 1)) < 1e-12);
    CHECK(contour_moment(1.0, 1.0, Vrho, C2, 2) == doctest::Approx(2.0).epsilon(1e-12));
    const Potential zero{2, 0.0, {0.0}, 1.0};
    CHECK_THROWS(zero.validate());
  }

  TEST_CASE("doubling the contour nodes changes nothing") {
    const auto P = quadratic_potential(2, 0.0, -1.3);
    ContourSpec big = C2;
    big.nodes *= 2;
    CHECK(contour_E(0.9, 1.1, P, C2) == doctest::Approx(contour_E(0.9, 1.1, P, big)).epsilon(1e-12));
    CHECK(contour_F(0.9, 1.1, P, C2) == doctest::Approx(contour_F(0.9, 1.1, P, big)).epsilon(1e-12));
  }

  TEST_CASE("hard-edge solve, V = x^2") {
    const auto eq = solve_C1(quadratic_potential(2, 0.0, 0.0), C2);
    CHECK(eq.c == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(eq.b == doctest::Approx(3.0 * std::sqrt(3.0) / (2.0 * std::sqrt(2.0))).epsilon(1e-10));
    CHECK(eq.b == doctest::Approx(eq.c * std::pow(3.0, 1.5) / 2.0).epsilon(1e-14));
    CHECK(std::abs(equation_residual(eq.c, eq.c, quadratic_potential(2, 0.0, 0.0), C2)) < 1e-9);
    CHECK(std::abs(contour_H(eq.c, eq.c, quadratic_potential(2, 0.0, 0.0), C2)) < 1e-9);
  }

  TEST_CASE("transition solve, V = x^2 - 2x") {
    const auto P = quadratic_potential(2, 0.0, -2.0);
    const auto eq = solve_C1(P, C2);
    CHECK(eq.c == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eq.b == doctest::Approx(2.59807621135).epsilon(1e-10));
    CHECK(eq.A1 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(eq.rho == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(eq.d1 == doctest::Approx(std::sqrt(3.0) / M_PI).epsilon(1e-9));
    CHECK(eq.A1 == doctest::Approx(std::pow(eq.c, 4.0 / 3.0) * eq.rho).epsilon(1e-12));
    CHECK(std::abs(eq.m1) < 1e-8);
    CHECK(eq.dc_dt == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    const auto a = compute_A2_A3(eq.c, P, C2);
    CHECK(a.A2 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(a.A3 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(a.relation_residual) < 1e-9);
    CHECK(classify(P, C2) == Regime::transition);
  }

  TEST_CASE("dc/dt by finite differences") {
    const auto P = quadratic_potential(2, 0.0, -2.0);
    const double h = 1e-4;
    const double up = solve_C1(P.with_t(1 + h), C2, false).c, dn = solve_C1(P.with_t(1 - h), C2, false).c;
    CHECK((up - dn) / (2 * h) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  }

  TEST_CASE("theta = 3: the integration-by-parts identity holds, the bare relation does not") {
    const Potential P{3, 0.0, {0.0, 1.0}, 1.0};
    const auto C3 = ContourSpec::default_for(3);
    const auto eq = solve_C1(P, C3);
    const auto a = compute_A2_A3(eq.c, P, C3);
    CHECK(std::abs(a.identity_residual) < 1e-9);
    // Away from criticality the relation is off by exactly m1 / theta.
    CHECK(a.relation_residual == doctest::Approx(eq.m1 / 3.0).epsilon(1e-9));
  }

  TEST_CASE("densities: mass, exponents and Euler-Lagrange") {
    for (double rho : {0.0, -2.0}) {
      const auto eq = solve_C1(quadratic_potential(2, 0.0, rho), C2);
      CAPTURE(rho);
      CHECK(total_mass(eq.measure) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(total_mass_formula(eq.measure) == doctest::Approx(1.0).epsilon(1e-10));
      const double slope = loglog_slope([&](double x) { return density_psi(eq, x); }, 1e-6 * eq.b, 1e-3 * eq.b);
      CHECK(slope == doctest::Approx(rho == 0.0 ? -1.0 / 3.0 : 1.0 / 3.0).epsilon(0.02 / (1.0 / 3.0)));
      const auto lp = g_and_ell(eq.measure, quadratic_potential(2, 0.0, rho));
      CHECK(lp.ell_spread <= 1e-7);
      const double x = 1.5 * eq.b;
      CHECK(lp.g(x) + lp.gtilde(x) - quadratic_potential(2, 0.0, rho).Vt(x) - lp.ell < 0.0);
    }
  }

  TEST_CASE("soft edge, V = x^2 - 2.5x") {
    const auto P = quadratic_potential(2, 0.0, -2.5);
    CHECK(classify(P, C2) == Regime::soft);
    const auto s = solve_C2(P, C2);
    CHECK(s.a_hat > 0.0);
    CHECK(s.a_hat < s.b_hat);
    CHECK(total_mass(s.measure) == doctest::Approx(1.0).epsilon(1e-8));
    const double slope =
        loglog_slope([&](double x) { return density_psi(s, s.b_hat - x); }, 1e-6 * s.b_hat, 1e-3 * s.b_hat);
    CHECK(std::abs(slope - 0.5) < 0.02);
    CHECK(s.d2_hat == doctest::Approx(s.d2_hat_exact).epsilon(1e-4));
  }

  TEST_CASE("a_hat vanishes like (1 - t)^{3/2}") {
    double a[3];
    const double ts[3] = {0.99, 0.995, 0.9975};
    for (int i = 0; i < 3; ++i) a[i] = solve_C2(quadratic_potential(2, 0.0, -2.0, ts[i]), C2, false).a_hat;
    const double s1 = std::log(a[0] / a[1]) / std::log(2.0), s2 = std::log(a[1] / a[2]) / std::log(2.0);
    CHECK(std::abs(s1 - 1.5) < 0.05);
    CHECK(std::abs(s2 - 1.5) < 0.05);
  }

  TEST_CASE("inverse maps round trip") {
    const auto m = solve_C1(quadratic_potential(2, 0.0, -2.0), C2, false).measure;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
      const cplx z(u(rng), u(rng));
      if (std::abs(z.imag()) < 1e-3) continue;
      const auto im = inverse_maps(m, z);
      CHECK(std::abs(j_map(2, m.u, m.v, im.s1) - z) <= 1e-11 * std::max(1.0, std::abs(z)));
    }
  }

  TEST_CASE("rho = -2.1 at t = 1 is soft; rho = -1.9 is hard with N' > 0") {
    CHECK(classify(quadratic_potential(2, 0.0, -2.1), C2) == Regime::soft);
    const auto eq = solve_C1(quadratic_potential(2, 0.0, -1.9), C2, false);
    CHECK(eq.m1 > 0.0);
  }
}
