#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "edgetrans/chazy.hpp"
#include "edgetrans/errors.hpp"

using namespace edgetrans;

namespace {

// alpha in (-0.9, 2), then c, c', c'' in [-1, 1].
struct Draw {
  double alpha, c, cp, cpp;
};
Draw draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), ua(-0.9, 2.0);
  Draw d;
  d.alpha = ua(rng);
  d.c = u(rng), d.cp = u(rng), d.cpp = u(rng);
  return d;
}

double max_state(const ChazyState& s) {
  return std::max({std::abs(s.c), std::abs(s.b), std::abs(s.f), std::abs(s.a), std::abs(s.k), std::abs(s.d)});
}

}  // namespace

TEST_SUITE("chazy") {
  TEST_CASE("gamma") {
    CHECK(gamma_const(0.0) == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
    CHECK(gamma_const(0.5) == doctest::Approx(7.0 / 144.0).epsilon(1e-15));
    CHECK(gamma_const(2.0) == doctest::Approx(1.0 / 36.0 + 1.0 / 6.0 - 1.0 / 3.0).epsilon(1e-15));
    CHECK(gamma_const(-0.5) == doctest::Approx(-5.0 / 144.0).epsilon(1e-15));
  }

  TEST_CASE("zero state") {
    const auto s = complete_from_c(0.0, 0.0, 0.0, 0.0, 0.0);
    CHECK(s.b == doctest::Approx(1.0 / 72.0).epsilon(1e-15));
    CHECK(s.f == doctest::Approx(-1.0 / 72.0).epsilon(1e-15));
    CHECK(s.a == 0.0);
    CHECK(s.k == 0.0);
    CHECK(s.d == doctest::Approx(97.0 / 5184.0).epsilon(1e-14));
    for (double r : constraint_residuals(s)) CHECK(std::abs(r) < 1e-16);
    CHECK(det_a_minus1(s) == doctest::Approx(0.0092592592592593).epsilon(1e-12));
    CHECK(det_target(0.0) == 0.0);
    // The second-degree residual is 32 (det A_{-1} - target) on the level c = c' = 0.
    CHECK(residual_chazy_u(s) == doctest::Approx(32.0 * (det_a_minus1(s) - det_target(0.0))).epsilon(1e-12));
  }

  TEST_CASE("derivatives of c reproduce the inputs") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto d = draw(rng);
      const auto s = complete_from_c(d.c, d.cp, d.cpp, 0.25, d.alpha);
      const auto cd = c_derivatives(s, 3);
      CHECK(cd[0] == doctest::Approx(d.c).epsilon(1e-14));
      CHECK(cd[1] == doctest::Approx(d.cp).epsilon(1e-12));
      CHECK(std::abs(cd[2] - d.cpp) < 1e-12);
      CHECK(ode_rhs(s).c == doctest::Approx(d.cp).epsilon(1e-12));
      for (double r : constraint_residuals(s)) CHECK(std::abs(r) < 1e-13);
      // trace A_{-1} = 1
      const auto A = a_minus1(s);
      CHECK(A[0][0] + A[1][1] + A[2][2] == doctest::Approx(1.0).epsilon(1e-13));
    }
  }

  TEST_CASE("jets agree with the integrator") {
    const auto s = complete_from_c(0.3, -0.2, 0.1, 0.0, 0.4);
    const auto tr = integrate(s, 0.2);
    const auto e = tr.states.back();
    const auto t = taylor_advance(s, 0.2);
    CHECK(std::abs(t.c - e.c) < 1e-11);
    CHECK(std::abs(t.d - e.d) < 1e-11);
    const auto j = chazy_jet(s, 4);
    CHECK(j.coeffs[0][1] == doctest::Approx(ode_rhs(s).c).epsilon(1e-14));
    CHECK(j.coeffs[5][1] == doctest::Approx(ode_rhs(s).d).epsilon(1e-14));
  }

  TEST_CASE("random states: drift and scalar residuals") {
    std::mt19937_64 rng(0);
    for (int i = 0; i < 20; ++i) {
      const auto d = draw(rng);
      CAPTURE(i);
      StepControl ctl;
      ctl.throw_on_pole = false;
      const auto tr = integrate(complete_from_c(d.c, d.cp, d.cpp, 0.0, d.alpha), 1.0, ctl);
      if (!tr.hit_pole()) CHECK(max_constraint_drift(tr) <= 1e-10);
      for (const auto& st : tr.states)
        if (max_state(st) <= 1e2)
          for (double r : constraint_residuals(st)) CHECK(std::abs(r) <= 1e-10);
      for (int k = 1; k <= 10; ++k) {
        const double tau = std::min(tr.tau_end(), 0.1 * k);
        if (max_state(tr.at(tau)) > 1e2) break;
        CHECK(std::abs(residual_third_order(tr, tau)) <= 1e-8);
        CHECK(std::abs(residual_chazy1(tr, tau)) <= 1e-8);
        CHECK(std::abs(residual_boussinesq(tr, tau)) <= 1e-8);
      }
    }
  }

  TEST_CASE("spectral level") {
    std::mt19937_64 rng(0);
    int found = 0;
    for (int attempt = 0; found < 10 && attempt < 100; ++attempt) {
      const auto d = draw(rng);
      ChazyState s;
      try {
        s = complete_on_spectral_level(d.c, d.cp, 0.0, d.alpha);
      } catch (const DomainError&) {
        continue;
      }
      ++found;
      CHECK(det_a_minus1(s) == doctest::Approx(det_target(d.alpha)).epsilon(1e-12));
      CHECK(spectrum_error(s) < 1e-7);
      CHECK(std::abs(residual_chazy_u(s)) < 1e-10);
      StepControl ctl;
      ctl.throw_on_pole = false;
      const auto tr = integrate(s, 1.0, ctl);
      for (double tau : {0.3, 0.6, 0.9}) {
        if (tau > tr.tau_end() || max_state(tr.at(tau)) > 1e2) break;
        CHECK(std::abs(residual_chazy_u(tr, tau)) < 1e-8);
        CHECK(spectrum_error(tr.at(tau)) < 1e-6);
      }
    }
    CHECK(found == 10);
    const auto t = spectrum_target(0.3);
    CHECK(t[0] + t[1] + t[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(t[0] * t[1] * t[2] == doctest::Approx(det_target(0.3)).epsilon(1e-14));
  }

  TEST_CASE("zero curvature") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10; ++i) {
      const auto d = draw(rng);
      const auto s = complete_from_c(d.c, d.cp, d.cpp, 0.1 * i, d.alpha);
      for (std::complex<double> xi : {std::complex<double>(1.0, 1.0), std::complex<double>(-0.5, 2.0)})
        CHECK(zero_curvature_residual(s, xi) <= 1e-12);
    }
    CHECK_THROWS_AS(lax_pair(complete_from_c(0, 0, 0, 0, 0), 0.0), DomainError);
  }

  TEST_CASE("time reversal") {
    const auto s = complete_from_c(0.2, 0.5, -0.3, 0.0, 0.3);
    const auto fwd = integrate(s, 0.8);
    const auto back = integrate(fwd.states.back(), 0.0);
    const auto r = back.states.back();
    CHECK(r.tau == 0.0);
    CHECK(std::abs(r.c - s.c) < 1e-11);
    CHECK(std::abs(r.b - s.b) < 1e-11);
    CHECK(std::abs(r.d - s.d) < 1e-11);
  }

  TEST_CASE("pole detection") {
    const auto s = complete_from_c(-2.0, -6.0, -20.0, 0.0, 0.3);
    CHECK_THROWS_AS(integrate(s, 1.0), PoleError);
    StepControl ctl;
    ctl.throw_on_pole = false;
    const auto tr = integrate(s, 1.0, ctl);
    REQUIRE(tr.hit_pole());
    CHECK(tr.pole_tau == doctest::Approx(0.367652).epsilon(1e-4));
    CHECK(tr.tau_end() < tr.pole_tau);
    // Near the pole c ~ 1/(sqrt 2 (tau - tau0)).
    const auto last = tr.states.back();
    CHECK(last.c * std::numbers::sqrt2 * (last.tau - tr.pole_tau) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(tr.at(0.9), DomainError);
  }

  TEST_CASE("csv header") {
    const auto tr = integrate(complete_from_c(0.1, 0.1, 0.1, 0.0, 0.0), 0.1);
    const auto csv = tr.to_csv();
    CHECK(csv.rfind("tau,c,b,f,a,k,d,constraint1,constraint2,constraint3,third_order,chazy_u\n", 0) == 0);
  }
}
