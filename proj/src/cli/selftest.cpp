#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "edgetrans/biorth.hpp"
#include "edgetrans/chazy.hpp"
#include "edgetrans/cli.hpp"
#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"
#include "edgetrans/limitmaps.hpp"

namespace edgetrans::cli {

namespace {

// Each check appends "name=value" items to `detail` and returns pass/fail.
using Check = std::function<bool(std::mt19937_64&, std::ostringstream&)>;

bool check_specialfn(std::mt19937_64& rng, std::ostringstream& detail) {
  std::uniform_real_distribution<double> ux(0.1, 5.0), ua(-0.9, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int theta = 2 + i % 2;
    const double x = ux(rng), alpha = ua(rng);
    const auto p1 = meijer_params_g10(theta, alpha);
    const auto p2 = meijer_params_gtheta0(theta, alpha);
    const double o1 = mellin_barnes_oracle(x, p1, MeijerKind::g10).value;
    const double o2 = mellin_barnes_oracle(x, p2, MeijerKind::gtheta0).value;
    worst = std::max({worst, std::abs(meijer_g10(x, p1) - o1) / std::abs(o1),
                      std::abs(meijer_g_theta0(x, p2) - o2) / std::abs(o2)});
  }
  double overlap = 0.0;
  for (double x = 5.0; x <= 7.0; x += 0.25)
    for (double s : {-1.0, 1.0}) {
      const auto a = airy_series(s * x), b = airy_asymptotic(s * x);
      overlap = std::max({overlap, std::abs(a.ai - b.ai), std::abs(a.aip - b.aip)});
    }
  detail << "meijer_vs_mb=" << worst << " airy_overlap=" << overlap;
  return worst <= 1e-9 && overlap <= 1e-10;
}

bool check_equilibrium(std::mt19937_64&, std::ostringstream& detail) {
  const auto P = quadratic_potential(2, 0.0, -2.0);
  const auto eq = solve_C1(P, ContourSpec::default_for(2), false);
  const double mass = total_mass(eq.measure);
  detail << "c=" << eq.c << " m1=" << eq.m1 << " mass=" << mass;
  return std::abs(eq.c - 1.0) <= 1e-9 && std::abs(eq.m1) <= 1e-8 && std::abs(mass - 1.0) <= 1e-8;
}

bool check_limitmaps(std::mt19937_64&, std::ostringstream& detail) {
  double worst = 0.0, slope = 0.0;
  for (int theta : {2, 3}) {
    const auto d = PreMapData::make(theta);
    for (double x = 2.0; x <= 5.0; x += 0.5)
      worst = std::max(worst, std::abs(g_boundary(d, x, 0, 1) - g_boundary(d, x, 1, -1)));
    for (double x = -5.0; x < 0.0; x += 0.7)
      for (int k = 1; k <= theta; ++k)
        worst = std::max(worst, std::abs(g_boundary(d, x, k, 1) - g_boundary(d, x, k == theta ? 1 : k + 1, -1)));
    slope = std::max(slope, std::abs(airy_conformal_slope_numeric(d) - airy_conformal_slope_exact(theta)));
  }
  detail << "jump=" << worst << " f_prime_error=" << slope;
  return worst <= 1e-9 && slope <= 1e-7;
}

bool check_biorth(std::mt19937_64&, std::ostringstream& detail) {
  const Potential P{2, 0.0, {0.0, 1.0}, 1.0};
  const int n = 6, bits = default_precision_bits(n);
  const auto T = moments_quadratic(P, n, required_moment_index(2, n), bits);
  const auto F = biorth_solve(T);
  const auto minors = bimoment_minors(T, n);
  double worst = 0.0;
  for (int j = 1; j < n; ++j) {
    const mp::Real ratio = minors[j] / minors[j - 1];
    worst = std::max(worst, (mp::abs(ratio - F.kappas[j]) / F.kappas[j]).to_double());
  }
  detail << "residual=" << F.max_residual << " kappa_vs_minors=" << worst;
  return F.max_residual <= 1e-20 && worst <= 1e-20;
}

bool check_kernels(std::mt19937_64& rng, std::ostringstream& detail) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double two_path = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double x = u(rng), y = u(rng);
    two_path = std::max(two_path, std::abs(kernel_airy_cd(x, y) - kernel_airy_integral(x, y)));
  }
  const std::vector<double> xs{0.5, 1.0, 2.0};
  const LimitKernelSpec s{2, 0.0, LimitKind::meijer};
  const bool same = meijer_grid(s, xs, xs, Schedule::serial).values == meijer_grid(s, xs, xs, Schedule::parallel).values;
  const double k11 = kernel_meijer(s, 1.0, 1.0);
  detail << "airy_two_path=" << two_path << " serial_eq_parallel=" << same << " K_mei(1,1)=" << k11;
  return two_path <= 1e-9 && same && std::abs(k11 - 0.43393676127) <= 1e-9;
}

bool check_chazy(std::mt19937_64& rng, std::ostringstream& detail) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), ua(-0.9, 2.0);
  double drift = 0.0, res = 0.0, spectrum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double alpha = ua(rng), c = u(rng), cp = u(rng), cpp = u(rng);
    const auto tr = integrate(complete_from_c(c, cp, cpp, 0.0, alpha), 1.0);
    drift = std::max(drift, max_constraint_drift(tr));
    for (double tau : {0.1, 0.5, 0.9})
      res = std::max({res, std::abs(residual_third_order(tr, tau)), std::abs(residual_chazy1(tr, tau)),
                      std::abs(residual_boussinesq(tr, tau))});
    try {
      spectrum = std::max(spectrum, spectrum_error(complete_on_spectral_level(c, cp, 0.0, alpha)));
    } catch (const DomainError&) {
      // (c, c') off the spectral level: nothing to check.
    }
  }
  detail << "drift=" << drift << " residual=" << res << " spectrum=" << spectrum;
  return drift <= 1e-8 && res <= 1e-8 && spectrum <= 1e-10;
}

}  // namespace

int cmd_selftest(const RunConfig& cfg, std::ostream& os) {
  const std::pair<const char*, Check> checks[] = {
      {"specialfn", check_specialfn}, {"equilibrium", check_equilibrium}, {"limitmaps", check_limitmaps},
      {"biorth", check_biorth},       {"kernels", check_kernels},         {"chazy", check_chazy},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    std::mt19937_64 rng(cfg.seed);
    std::ostringstream detail;
    detail.precision(3);
    bool ok = false;
    try {
      ok = check(rng, detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    failures += !ok;
    os << "selftest " << name << ": " << (ok ? "PASS" : "FAIL") << " (" << detail.str() << ")\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace edgetrans::cli
