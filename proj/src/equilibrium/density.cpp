#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "internal.hpp"
#include "json.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this fraction of b the density is not evaluated inside quadratures;
// the neglected mass is below 1e-40 for every admissible edge exponent.
constexpr double kTinyFraction = 1e-60;

double quad(const std::function<double(double, double)>& f, double lo, double hi) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  return integrator.integrate(f, lo, hi, 1e-13);
}

// psi for use inside quadratures: clipped away from a hard edge at 0.
double psi_quad(const EquilibriumMeasure& m, double y) {
  if (y < kTinyFraction * m.b) return 0.0;
  return density_psi(m, y);
}

}  // namespace

double density_psi(const EquilibriumMeasure& m, double x) {
  if (!(x > m.a) || !(x < m.b)) return 0.0;
  const cplx w = detail::preimage_upper_w(m, x);
  return m.N_w(w).imag() / (kPi * x);
}

double density_psi(const HardEdgeEquilibrium& eq, double x) { return density_psi(eq.measure, x); }
double density_psi(const SoftEdgeEquilibrium& eq, double x) { return density_psi(eq.measure, x); }

double total_mass(const EquilibriumMeasure& m) {
  return quad([&](double y, double) { return psi_quad(m, y); }, m.a, m.b);
}

double total_mass_formula(const EquilibriumMeasure& m) {
  const double th = m.theta;
  return (m.N(0.0).real() - m.N(-1.0).real()) / th - m.N(-m.v / m.u).real();
}

LogPotentials g_and_ell(const EquilibriumMeasure& m, const Potential& P) {
  const int th = m.theta;
  // Log kernels split at x so the singularity sits at an endpoint, where the
  // complement argument of tanh-sinh gives |x - y| without cancellation.
  auto log_integral = [m](double x, const std::function<double(double, double)>& kernel) {
    double total = 0.0;
    const double lo = m.a, hi = m.b;
    if (x > lo && x < hi) {
      const double mid_l = 0.5 * (lo + x), mid_r = 0.5 * (x + hi);
      total += quad([&](double y, double yc) {
        const double d = y > mid_l ? yc : x - y;
        return kernel(y, d) * psi_quad(m, y);
      }, lo, x);
      total += quad([&](double y, double yc) {
        const double d = y < mid_r ? -yc : y - x;
        return kernel(y, d) * psi_quad(m, y);
      }, x, hi);
    } else {
      total += quad([&](double y, double) { return kernel(y, std::abs(x - y)) * psi_quad(m, y); }, lo, hi);
    }
    return total;
  };
  std::function<double(double)> g = [log_integral](double x) {
    return log_integral(x, [](double, double d) { return std::log(std::abs(d)); });
  };
  std::function<double(double)> gtilde = [log_integral, th](double x) {
    // log|x^theta - y^theta| = log|x - y| + log(sum_k x^{theta-1-k} y^k)
    return log_integral(x, [x, th](double y, double d) {
      double sum = 0.0, xp = std::pow(x, th - 1), ratio = (x != 0.0) ? y / x : 0.0, term = xp;
      if (x == 0.0) {
        sum = std::pow(y, th - 1);
      } else {
        for (int k = 0; k < th; ++k, term *= ratio) sum += term;
      }
      return std::log(std::abs(d)) + std::log(std::abs(sum));
    });
  };

  double lmin = 1e300, lmax = -1e300, lmid = 0.0;
  for (double frac : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const double x = m.a + frac * (m.b - m.a);
    const double l = g(x) + gtilde(x) - P.Vt(x);
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
    if (frac == 0.5) lmid = l;
  }
  LogPotentials out{lmid, lmax - lmin, g, gtilde};
  if (out.ell_spread > 1e-7)
    throw ConsistencyError("g_and_ell: Euler-Lagrange constant varies by more than 1e-7 over the support");
  return out;
}

EdgeFit fit_right_edge(const EquilibriumMeasure& m) {
  const int n = 24;
  const double width = m.b - m.a;
  std::vector<double> lx(n), ly(n), eps(n), ratio(n);
  for (int i = 0; i < n; ++i) {
    eps[i] = width * std::pow(10.0, -7.0 + 3.0 * i / (n - 1));
    const double psi = density_psi(m, m.b - eps[i]);
    if (!(psi > 0.0)) throw ConsistencyError("fit_right_edge: density is not positive near the right endpoint");
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(psi);
    ratio[i] = psi / std::sqrt(eps[i]);
  }
  auto linfit = [n](const std::vector<double>& x, const std::vector<double>& y, double& slope, double& icpt,
                    double& r2) {
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
      syy += (y[i] - my) * (y[i] - my);
    }
    slope = sxy / sxx;
    icpt = my - slope * mx;
    r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  };
  EdgeFit fit{};
  double icpt = 0.0;
  linfit(lx, ly, fit.exponent, icpt, fit.r_squared);
  if (fit.r_squared < 0.999) throw ConsistencyError("fit_right_edge: square-root fit has R^2 < 0.999");
  // psi / sqrt(b - x) = d2 (1 + O(b - x)); the intercept of a line in b - x.
  double slope = 0.0, r2 = 0.0;
  linfit(eps, ratio, slope, fit.d2, r2);
  return fit;
}

double loglog_slope(const std::function<double(double)>& f, double lo, double hi, int points) {
  double mx = 0, my = 0;
  std::vector<double> x(points), y(points);
  for (int i = 0; i < points; ++i) {
    const double xi = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    x[i] = std::log(xi);
    y[i] = std::log(std::abs(f(xi)));
    mx += x[i];
    my += y[i];
  }
  mx /= points;
  my /= points;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

std::string to_json(const HardEdgeEquilibrium& eq) {
  nlohmann::json j;
  j["regime"] = "hard";
  j["theta"] = eq.theta;
  j["t"] = eq.t;
  j["c"] = eq.c;
  j["b"] = eq.b;
  j["A1"] = eq.A1;
  j["A2"] = eq.A2;
  j["A3"] = eq.A3;
  j["d1"] = eq.d1;
  j["rho"] = eq.rho;
  j["ell"] = eq.ell;
  j["N_in_prime_at_minus_1"] = eq.m1;
  j["dc_dt"] = eq.dc_dt;
  j["negative_density"] = eq.negative_density;
  j["N_in_coefficients"] = eq.measure.n_in;
  return j.dump(2);
}

std::string to_json(const SoftEdgeEquilibrium& eq) {
  nlohmann::json j;
  j["regime"] = "soft";
  j["theta"] = eq.theta;
  j["t"] = eq.t;
  j["c1"] = eq.c1;
  j["c0"] = eq.c0;
  j["s_a"] = eq.s_a;
  j["s_b"] = eq.s_b;
  j["a_hat"] = eq.a_hat;
  j["b_hat"] = eq.b_hat;
  j["ell_hat"] = eq.ell_hat;
  j["d2_hat"] = eq.d2_hat;
  j["d2_hat_exact"] = eq.d2_hat_exact;
  j["t_critical"] = eq.t_critical;
  j["N_in_coefficients"] = eq.measure.n_in;
  return j.dump(2);
}

}  // namespace edgetrans
