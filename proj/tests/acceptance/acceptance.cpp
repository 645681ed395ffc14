// One verdict line per acceptance criterion. Every tolerance and sample size
// is a named constant below; nothing is read from the environment.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "edgetrans/biorth.hpp"
#include "edgetrans/chazy.hpp"
#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"
#include "edgetrans/limitmaps.hpp"

using namespace edgetrans;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// 1. Transition criticality.
constexpr double kC1CriticalTol = 1e-8;
constexpr double kC1Seconds = 5.0;

Verdict criterion1() {
  const auto C = ContourSpec::default_for(2);
  const auto at = solve_C1(quadratic_potential(2, 0.0, -2.0), C, false);
  const auto above = solve_C1(quadratic_potential(2, 0.0, -1.9), C, false);
  const auto below = quadratic_potential(2, 0.0, -2.1);
  const bool negative = solve_C1(below, C, false).negative_density;
  const double a_hat = solve_C2(below, C, false).a_hat;
  // rho = -2 sqrt(2) / sqrt(theta) must be exactly critical at t = 1.
  const double t_c = transition_point(quadratic_potential(2, 0.0, -2.0 * std::numbers::sqrt2 / std::sqrt(2.0)), C).second;
  Verdict v;
  v.pass = std::abs(at.m1) <= kC1CriticalTol && std::abs(t_c - 1.0) <= kC1CriticalTol && above.m1 > 0.0 &&
           (negative || a_hat > 0.0);
  v.detail = "m1(-2)=" + fmt(at.m1) + " t_c(-2)=" + fmt(t_c) + " m1(-1.9)=" + fmt(above.m1) + " C1(-2.1) negative=" +
             std::to_string(negative) + " a_hat(-2.1)=" + fmt(a_hat);
  return v;
}

// 2. Density exponents.
constexpr double kSlopeTol = 0.02;
constexpr double kSlopeLo = 1e-6, kSlopeHi = 1e-3;

Verdict criterion2() {
  const auto C = ContourSpec::default_for(2);
  const auto hard = solve_C1(quadratic_potential(2, 0.0, 0.0), C, false);
  const auto crit = solve_C1(quadratic_potential(2, 0.0, -2.0), C, false);
  const auto soft = solve_C2(quadratic_potential(2, 0.0, -2.5), C, false);
  const double s_hard =
      loglog_slope([&](double x) { return density_psi(hard, x); }, kSlopeLo * hard.b, kSlopeHi * hard.b);
  const double s_crit =
      loglog_slope([&](double x) { return density_psi(crit, x); }, kSlopeLo * crit.b, kSlopeHi * crit.b);
  const double s_soft = loglog_slope([&](double x) { return density_psi(soft, soft.b_hat - x); },
                                     kSlopeLo * soft.b_hat, kSlopeHi * soft.b_hat);
  Verdict v;
  v.pass = std::abs(s_hard + 1.0 / 3.0) <= kSlopeTol && std::abs(s_crit - 1.0 / 3.0) <= kSlopeTol &&
           std::abs(s_soft - 0.5) <= kSlopeTol;
  v.detail = "slopes rho=0: " + fmt(s_hard) + " rho=-2: " + fmt(s_crit) + " rho=-2.5 at b_hat: " + fmt(s_soft);
  return v;
}

// 3. kappa_n asymptotics at tau = 0.
constexpr int kKappaNs[] = {8, 16, 32};
constexpr double kKappaMaxError = 0.35;

Verdict criterion3() {
  const auto P = quadratic_potential(2, 0.0, -2.0);
  const auto eq = solve_C1(P, ContourSpec::default_for(2));
  std::vector<double> err;
  std::string detail;
  for (int n : kKappaNs) {
    // kappa_n is the (n+1)-th pivot, so the factorization has n + 1 rows.
    const int bits = default_precision_bits(n);
    const auto T = moments_quadratic(P, n, required_moment_index(2, n + 1), bits);
    const auto F = biorth_solve(T, n + 1);
    const double log_ratio = F.kappas[n].log_abs() - std::log(2.0 * std::numbers::pi / std::sqrt(2.0)) -
                             (P.alpha + 1.0) * std::log(eq.c) - n * eq.ell;
    err.push_back(std::abs(std::exp(log_ratio) - 1.0));
    detail += "err(" + std::to_string(n) + ")=" + fmt(err.back()) + " ";
  }
  Verdict v;
  v.pass = std::is_sorted(err.rbegin(), err.rend()) && err.back() < err.front() && err.back() < kKappaMaxError;
  v.detail = detail + "(c=" + fmt(eq.c) + " ell=" + fmt(eq.ell) + ")";
  return v;
}

// 4. Hard-edge Meijer-G limit with a fitted scale.
constexpr int kMeijerNs[] = {12, 24, 48};
constexpr int kMeijerGrid = 5;
constexpr double kMeijerLo = 0.3, kMeijerHi = 3.0;
constexpr double kScaleLo = 1e-4, kScaleHi = 1.0;
constexpr int kScaleScan = 241;
constexpr int kGoldenIterations = 80;

std::vector<double> midpoints(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * (i + 0.5) / count;
  return v;
}

Verdict criterion4() {
  const auto P = quadratic_potential(2, 0.0, 0.0);
  const auto xs = midpoints(kMeijerLo, kMeijerHi, kMeijerGrid);
  const auto limit = meijer_grid({2, 0.0, LimitKind::meijer}, xs, xs, Schedule::parallel).values;
  std::vector<double> sups;
  std::string detail;
  for (int n : kMeijerNs) {
    const int bits = default_precision_bits(n);
    const auto T = moments_quadratic(P, n, required_moment_index(2, n), bits);
    const auto F = biorth_solve(T);
    auto scaled = [&](double s) {
      std::vector<double> sx(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) sx[i] = s * xs[i];
      auto g = finite_grid(F, T, sx, sx, Schedule::parallel).values;
      for (auto& row : g)
        for (double& k : row) k *= s;
      return g;
    };
    auto sse = [&](double log_s) {
      const auto g = scaled(std::exp(log_s));
      double sum = 0.0;
      for (int i = 0; i < kMeijerGrid; ++i)
        for (int k = 0; k < kMeijerGrid; ++k) sum += std::pow(g[i][k] - limit[i][k], 2);
      return sum;
    };
    // Least squares in log s: scan, then golden section around the best node.
    const double l0 = std::log(kScaleLo), l1 = std::log(kScaleHi), h = (l1 - l0) / (kScaleScan - 1);
    int best = 0;
    double best_val = sse(l0);
    for (int j = 1; j < kScaleScan; ++j)
      if (const double val = sse(l0 + j * h); val < best_val) best_val = val, best = j;
    double a = l0 + std::max(0, best - 1) * h, b = l0 + std::min(kScaleScan - 1, best + 1) * h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - r * (b - a), x2 = a + r * (b - a), f1 = sse(x1), f2 = sse(x2);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (f1 < f2) b = x2, x2 = x1, f2 = f1, x1 = b - r * (b - a), f1 = sse(x1);
      else a = x1, x1 = x2, f1 = f2, x2 = a + r * (b - a), f2 = sse(x2);
    }
    const double s = std::exp((a + b) / 2.0);
    const auto g = scaled(s);
    double sup = 0.0;
    for (int i = 0; i < kMeijerGrid; ++i)
      for (int k = 0; k < kMeijerGrid; ++k) sup = std::max(sup, std::abs(g[i][k] - limit[i][k]));
    sups.push_back(sup);
    detail += "n=" + std::to_string(n) + " s=" + fmt(s) + " sup=" + fmt(sup) + " ";
  }
  Verdict v;
  v.pass = sups[1] < sups[0] && sups[2] < sups[1];
  v.detail = detail;
  return v;
}

// 5. Soft-edge Airy limit, compared through the conjugation-invariant
// sgn(K) sqrt(K(u,v) K(v,u)).
constexpr int kAiryNs[] = {12, 24};
constexpr double kAiryMaxSup = 0.2;

Verdict criterion5() {
  const auto P = quadratic_potential(2, 0.0, -2.5);
  const auto seq = solve_C2(P, ContourSpec::default_for(2), false);
  const std::vector<double> us{-2.0, -1.0, 0.0, 1.0, 2.0};
  std::vector<double> sups;
  std::string detail;
  for (int n : kAiryNs) {
    const int bits = default_precision_bits(n);
    const auto T = moments_quadratic(P, n, required_moment_index(2, n), bits);
    const auto F = biorth_solve(T);
    const auto g = soft_grid(F, T, seq, us, us, Schedule::parallel);
    const auto inv = gauge_invariant(g);
    double sup = 0.0, raw = 0.0;
    for (std::size_t i = 0; i < us.size(); ++i)
      for (std::size_t k = 0; k < us.size(); ++k) {
        sup = std::max(sup, std::abs(inv[i][k] - kernel_airy(us[i], us[k])));
        raw = std::max(raw, std::abs(g.values[i][k] - kernel_airy(us[i], us[k])));
      }
    sups.push_back(sup);
    detail += "n=" + std::to_string(n) + " sup=" + fmt(sup) + " (raw " + fmt(raw) + ") ";
  }
  Verdict v;
  v.pass = sups[1] < sups[0] && sups[1] < kAiryMaxSup;
  v.detail = detail;
  return v;
}

// 6. Chazy suite on states completed onto the prescribed spectrum.
constexpr int kChazyStates = 20;
constexpr std::uint64_t kChazySeed = 0;
constexpr int kChazySamples = 20;        // residuals at tau = j / 20
constexpr double kChazyFieldBound = 1e2;  // residuals are absolute: skip the pole's neighbourhood
constexpr double kDriftTol = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kZeroCurvatureTol = 1e-10;
constexpr double kSpectrumTol = 1e-10;

Verdict criterion6() {
  std::mt19937_64 rng(kChazySeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ua(-0.9, 2.0);
  double drift = 0.0, res = 0.0, zc = 0.0, spectrum = 0.0;
  int states = 0, rejected = 0, poles = 0;
  auto moderate = [](const ChazyState& s) {
    return std::max({std::abs(s.c), std::abs(s.b), std::abs(s.f), std::abs(s.a), std::abs(s.k), std::abs(s.d)}) <=
           kChazyFieldBound;
  };
  while (states < kChazyStates) {
    const double alpha = ua(rng), c = u(rng), cp = u(rng);
    ChazyState s0;
    try {
      s0 = complete_on_spectral_level(c, cp, 0.0, alpha);
    } catch (const DomainError&) {
      ++rejected;
      continue;
    }
    ++states;
    StepControl ctl;
    ctl.throw_on_pole = false;
    const auto tr = integrate(s0, 1.0, ctl);
    poles += tr.hit_pole();
    for (const auto& s : tr.states) {
      if (!moderate(s)) break;
      for (double r : constraint_residuals(s)) drift = std::max(drift, std::abs(r));
      for (std::complex<double> xi : {std::complex<double>(1.0, 1.0), std::complex<double>(-0.5, 2.0)})
        zc = std::max(zc, zero_curvature_residual(s, xi));
    }
    for (int j = 0; j <= kChazySamples; ++j) {
      const double tau = static_cast<double>(j) / kChazySamples;
      if (tau > tr.tau_end() || !moderate(tr.at(tau))) break;
      res = std::max({res, std::abs(residual_third_order(tr, tau)), std::abs(residual_chazy1(tr, tau)),
                      std::abs(residual_chazy_u(tr, tau)), std::abs(residual_boussinesq(tr, tau))});
      spectrum = std::max(spectrum, spectrum_error(tr.at(tau)));
    }
  }
  Verdict v;
  v.pass = drift <= kDriftTol && res <= kResidualTol && zc <= kZeroCurvatureTol && spectrum <= kSpectrumTol;
  v.detail = "drift=" + fmt(drift) + " residual=" + fmt(res) + " zero_curvature=" + fmt(zc) +
             " spectrum=" + fmt(spectrum) + " (states=" + std::to_string(states) + " rejected=" +
             std::to_string(rejected) + " poles=" + std::to_string(poles) + ")";
  return v;
}

// 7. Special-function oracles.
constexpr int kMeijerPoints = 50;
constexpr double kMeijerRelTol = 1e-9;
constexpr double kAiryOverlapTol = 1e-10;
constexpr double kAiryKernelTol = 1e-9;

Verdict criterion7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 20.0), ua(-0.9, 2.0), uk(-6.0, 6.0);
  double meijer = 0.0;
  for (int i = 0; i < kMeijerPoints; ++i) {
    const int theta = 2 + i % 2;
    double x = ux(rng);
    while (x == 0.0) x = ux(rng);
    const double alpha = ua(rng);
    const auto p1 = meijer_params_g10(theta, alpha);
    const auto p2 = meijer_params_gtheta0(theta, alpha);
    const double o1 = mellin_barnes_oracle(x, p1, MeijerKind::g10).value;
    const double o2 = mellin_barnes_oracle(x, p2, MeijerKind::gtheta0).value;
    meijer = std::max({meijer, std::abs(meijer_g10(x, p1) - o1) / std::abs(o1),
                       std::abs(meijer_g_theta0(x, p2) - o2) / std::abs(o2)});
  }
  double overlap = 0.0;
  for (double x = 5.0; x <= 7.0 + 1e-12; x += 0.05)
    for (double sgn : {-1.0, 1.0}) {
      const auto a = airy_series(sgn * x), b = airy_asymptotic(sgn * x);
      overlap = std::max({overlap, std::abs(a.ai - b.ai), std::abs(a.aip - b.aip)});
    }
  double two_path = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = uk(rng), y = uk(rng);
    if (x == y) continue;
    two_path = std::max(two_path, std::abs(kernel_airy_cd(x, y) - kernel_airy_integral(x, y)));
  }
  Verdict v;
  v.pass = meijer <= kMeijerRelTol && overlap <= kAiryOverlapTol && two_path <= kAiryKernelTol;
  v.detail = "meijer_vs_mb=" + fmt(meijer) + " airy_overlap=" + fmt(overlap) + " airy_kernel_two_path=" + fmt(two_path);
  return v;
}

// 8. g-function lemma.
constexpr double kJumpTol = 1e-9;
constexpr double kSlopeFormulaTol = 1e-7;
constexpr double kExpansionRelTol = 0.01;
constexpr double kExpansionRadius = 1e4;

Verdict criterion8() {
  double jump = 0.0, slope = 0.0, expansion = 0.0, min_gap = 1e300;
  for (int theta : {2, 3}) {
    const auto d = PreMapData::make(theta);
    for (double x = 1.05; x <= 8.0; x += 0.05)
      jump = std::max(jump, std::abs(g_boundary(d, x, 0, 1) - g_boundary(d, x, 1, -1)));
    for (double x = -8.0; x < -0.01; x += 0.05)
      for (int k = 1; k <= theta; ++k)
        jump = std::max(jump, std::abs(g_boundary(d, x, k, 1) - g_boundary(d, x, k == theta ? 1 : k + 1, -1)));
    for (double x = 0.01; x < 1.0; x += 0.01) min_gap = std::min(min_gap, g0_minus_g1(d, x).real());
    slope = std::max(slope, std::abs(airy_conformal_slope_numeric(d) - airy_conformal_slope_exact(theta)));
    for (int k = 0; k <= theta; ++k)
      for (double phi : {-2.5, -1.0, -0.3, 0.3, 1.0, 2.5}) {
        if (k == 0 && std::abs(phi) >= std::numbers::pi / theta) continue;
        const cplx z = std::polar(kExpansionRadius, phi);
        const auto [lead, sub] = g_expansion_coefficients(d, k, phi);
        const double p = 1.0 / (theta + 1.0);
        const cplx approx = lead * std::pow(z, 2.0 * p) + sub * std::pow(z, p);
        expansion = std::max(expansion, std::abs(g_function(d, z, k) - approx) / std::abs(approx));
      }
  }
  Verdict v;
  v.pass = jump <= kJumpTol && min_gap > 0.0 && slope <= kSlopeFormulaTol && expansion <= kExpansionRelTol;
  v.detail = "jump=" + fmt(jump) + " min(g0-g1) on (0,1)=" + fmt(min_gap) + " f_prime_error=" + fmt(slope) +
             " expansion_rel=" + fmt(expansion);
  return v;
}

struct Criterion {
  std::function<Verdict()> run;
  double budget_seconds;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-8); default all")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const Criterion criteria[] = {
      {criterion1, kC1Seconds}, {criterion2, 30.0}, {criterion3, 300.0}, {criterion4, 900.0},
      {criterion5, 900.0},      {criterion6, 60.0}, {criterion7, 30.0},  {criterion8, 10.0},
  };
  int failures = 0;
  for (int i = 1; i <= 8; ++i) {
    if (only != 0 && i != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i - 1].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= criteria[i - 1].budget_seconds;
    const bool ok = v.pass && in_budget;
    failures += !ok;
    std::cout << "criterion " << i << ": " << (ok ? "PASS" : "FAIL") << " (" << v.detail << "; " << fmt(secs)
              << " s of " << fmt(criteria[i - 1].budget_seconds) << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
