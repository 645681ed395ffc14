#include <cmath>
#include <random>

#include "doctest.h"
#include "edgetrans/errors.hpp"
#include "edgetrans/limitmaps.hpp"

using namespace edgetrans;

TEST_SUITE("limitmaps") {
  TEST_CASE("pre-map constants") {
    const auto d2 = PreMapData::make(2), d3 = PreMapData::make(3);
    CHECK(d2.sigma0 == doctest::Approx(-std::pow(2.0, -2.0 / 3.0)).epsilon(1e-15));
    CHECK(d3.sigma0 == doctest::Approx(-std::pow(3.0, -0.75)).epsilon(1e-15));
    CHECK(d2.Cg == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(d3.Cg == doctest::Approx(27.0 / 32.0).epsilon(1e-15));
    // The critical value is 1 and the map is critical there.
    CHECK(std::abs(j_pre(d2, d2.sigma0) - 1.0) < 1e-14);
    CHECK(std::abs(j_pre(d3, d3.sigma0) - 1.0) < 1e-14);
    CHECK(std::abs(j_pre_derivative(d2, d2.sigma0)) < 1e-13);
    CHECK(j_pre(d2, -1.0).real() == doctest::Approx(0.8898815748).epsilon(1e-9));
    CHECK_THROWS_AS(j_pre(d2, 0.5), BranchCutError);
  }

  TEST_CASE("inverse branches round trip") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int theta : {2, 3}) {
      const auto d = PreMapData::make(theta);
      for (int i = 0; i < 200; ++i) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z.imag()) < 1e-3) continue;
        const cplx s1 = i_pre(d, z, 1);
        CHECK(std::abs(j_pre(d, s1) - z) <= 1e-11 * std::max(1.0, std::abs(z)));
        if (std::abs(std::arg(z)) < M_PI / theta) {
          const cplx s2 = i_pre(d, z, 2);
          CHECK(std::abs(j_pre(d, s2) - z) <= 1e-11 * std::max(1.0, std::abs(z)));
          // Branch 2 lies inside the critical curve, branch 1 outside.
          CHECK(std::abs(s2) < std::abs(s1));
        }
      }
    }
  }

  TEST_CASE("g0 - g1 below the critical point") {
    // Frozen from a 30-digit evaluation of the defining composition.
    const double x[3] = {0.2, 0.5, 0.8};
    const double th2[3] = {0.40441885719793, 0.154700538379252, 0.0332936513209874};
    const double th3[3] = {0.208671328979056, 0.0738604183944961, 0.0152205361233671};
    const auto d2 = PreMapData::make(2), d3 = PreMapData::make(3);
    for (int i = 0; i < 3; ++i) {
      CAPTURE(x[i]);
      CHECK(g0_minus_g1(d2, x[i]).real() == doctest::Approx(th2[i]).epsilon(1e-11));
      CHECK(g0_minus_g1(d3, x[i]).real() == doctest::Approx(th3[i]).epsilon(1e-11));
      CHECK(std::abs(g0_minus_g1(d2, x[i]).imag()) < 1e-12);
    }
  }

  TEST_CASE("boundary jumps of the g functions") {
    for (int theta : {2, 3}) {
      const auto d = PreMapData::make(theta);
      for (double x = 1.5; x <= 6.0; x += 0.5)
        CHECK(std::abs(g_boundary(d, x, 0, 1) - g_boundary(d, x, 1, -1)) < 1e-9);
      for (double x = -6.0; x < 0.0; x += 0.5)
        for (int k = 1; k <= theta; ++k)
          CHECK(std::abs(g_boundary(d, x, k, 1) - g_boundary(d, x, k == theta ? 1 : k + 1, -1)) < 1e-9);
    }
  }

  TEST_CASE("airy conformal map slope") {
    CHECK(airy_conformal_slope_exact(2) == doctest::Approx(-0.403804576185).epsilon(1e-11));
    CHECK(airy_conformal_slope_exact(3) == doctest::Approx(-0.236235196855).epsilon(1e-11));
    for (int theta : {2, 3}) {
      const auto d = PreMapData::make(theta);
      CHECK(airy_conformal_slope_numeric(d) == doctest::Approx(airy_conformal_slope_exact(theta)).epsilon(1e-7));
      CHECK(std::abs(airy_conformal(d, 1.0)) < 1e-12);
      CHECK(airy_conformal(d, 0.8) > 0.0);
      CHECK(airy_conformal(d, 1.2) < 0.0);
      // (4/3) f^{3/2} = g0 - g1 below 1.
      const double f = airy_conformal(d, 0.7);
      CHECK(4.0 / 3.0 * std::pow(f, 1.5) == doctest::Approx(g0_minus_g1(d, 0.7).real()).epsilon(1e-11));
    }
    CHECK_THROWS_AS(airy_conformal(PreMapData::make(2), 1.7), DomainError);
  }

  TEST_CASE("tau constants") {
    const auto c = tau_constants(PreMapData::make(2));
    CHECK(c.c1 == doctest::Approx(1.05826737).epsilon(1e-8));
    CHECK(c.c2 == doctest::Approx(1.23822272).epsilon(1e-8));
    // c2 theta f'(1) = -1.
    for (int theta : {2, 3})
      CHECK(theta * tau_constants(PreMapData::make(theta)).c2 * airy_conformal_slope_exact(theta) ==
            doctest::Approx(-1.0).epsilon(1e-14));
  }

  TEST_CASE("conjugation factor") {
    const auto d = PreMapData::make(2);
    CHECK(conj_factor(d, 0.0, 2.0) == doctest::Approx(std::exp(conj_exponent(d, 0.0, 2.0))).epsilon(1e-14));
    CHECK(std::isfinite(conj_exponent(d, -0.5, 3.0)));
    CHECK(std::isfinite(conj_exponent(d, 0.5, 3.0)));
  }

  TEST_CASE("large-z expansion matches the g functions") {
    const auto d = PreMapData::make(2);
    const double phi = 0.3;
    for (int k = 0; k <= 1; ++k) {
      const auto [lead, sub] = g_expansion_coefficients(d, k, phi);
      const double r = 1e6;
      const cplx z = std::polar(r, phi);
      const cplx approx = lead * std::pow(z, 2.0 / 3.0) + sub * std::pow(z, 1.0 / 3.0);
      CAPTURE(k);
      CHECK(std::abs(g_function(d, z, k) - approx) < 1e-3 * std::abs(approx));
    }
  }
}
