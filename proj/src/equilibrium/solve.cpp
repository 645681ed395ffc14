#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "edgetrans/polyroots.hpp"
#include "internal.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest positive real root of sum_k a[k] c^k, or NaN.
double largest_positive_root(const std::vector<double>& a) {
  std::vector<cplx> coeffs(a.begin(), a.end());
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  double best = std::numeric_limits<double>::quiet_NaN();
  if (coeffs.size() < 2) return best;
  double size = 0.0;
  for (auto& x : coeffs) size = std::max(size, std::abs(x));
  for (const cplx& r : polynomial_roots(coeffs)) {
    if (r.real() <= 0.0 || std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r))) continue;
    if (!(r.real() <= best)) best = r.real();
  }
  return best;
}

// E(c, c) and N'_In(-1) (unscaled by t) as polynomials in c.
// With J_{c,c} = c J_{1,1}, U(J) = sum_k k v_k c^k J_{1,1}^k.
std::vector<double> curve_polynomial(const Potential& P, const ContourSpec& C, int p) {
  const int d = P.degree();
  const auto mom = detail::monomial_moments(P.theta, d, p, C);
  std::vector<double> a(d + 1, 0.0);
  for (int k = 1; k <= d; ++k) a[k] = k * P.coeffs[k - 1] * mom[k];
  return a;
}

struct System {
  double E, F, Eu, Ev, Fu, Fv;
};

System contour_system(double u, double v, const Potential& P, const ContourSpec& C) {
  const double inv_theta = 1.0 / P.theta;
  auto r = detail::contour_integrals(
      C, 6,
      [&](cplx s, cplx* out) {
        const cplx root = std::pow((s + 1.0) / s, inv_theta);
        const cplx J = (u * s + v) * root;
        const cplx U = J * P.dV(J);
        const cplx dU = P.dV(J) + J * P.d2V(J);
        const cplx Ju = s * root, Jv = root;
        const cplx a = 1.0 / (s + 1.0), b = 1.0 / s;
        out[0] = U * a;
        out[1] = U * b;
        out[2] = dU * Ju * a;
        out[3] = dU * Jv * a;
        out[4] = dU * Ju * b;
        out[5] = dU * Jv * b;
      },
      "contour_system");
  return {r[0], r[1], r[2], r[3], r[4], r[5]};
}

// Newton on (E - t, F - (1 + theta) t) = 0. Returns iterations used, or -1.
int newton_uv(double& u, double& v, const Potential& P, const ContourSpec& C, double t) {
  const double target_f = (1.0 + P.theta) * t;
  const double tol = 1e-12 * std::max(1.0, t);
  auto residual = [&](const System& s) { return std::hypot(s.E - t, s.F - target_f); };
  System sys = contour_system(u, v, P, C);
  double res = residual(sys);
  for (int it = 0; it < 50; ++it) {
    if (res <= tol) return it;
    const double det = sys.Eu * sys.Fv - sys.Ev * sys.Fu;
    if (det == 0.0 || !std::isfinite(det)) return -1;
    const double du = ((sys.E - t) * sys.Fv - (sys.F - target_f) * sys.Ev) / det;
    const double dv = ((sys.F - target_f) * sys.Eu - (sys.E - t) * sys.Fu) / det;
    double lambda = 1.0;
    bool accepted = false;
    for (int damp = 0; damp < 12; ++damp, lambda *= 0.5) {
      const double nu = u - lambda * du, nv = v - lambda * dv;
      if (!(nu > 0.0)) continue;
      System trial;
      try {
        trial = contour_system(nu, nv, P, C);
      } catch (const ConvergenceError&) {
        continue;
      }
      const double r = residual(trial);
      if (r < res || r <= tol) {
        u = nu;
        v = nv;
        sys = trial;
        res = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) return res <= 10 * tol ? it : -1;
  }
  return res <= tol ? 50 : -1;
}

double newton_c(double c, const Potential& P, const ContourSpec& C) {
  for (int it = 0; it < 50; ++it) {
    const System s = contour_system(c, c, P, C);
    const double r = s.E - P.t;
    if (std::abs(r) <= 1e-13 * std::max(1.0, P.t)) return c;
    const double step = r / (s.Eu + s.Ev);
    c -= step;
    if (std::abs(step) <= 1e-15 * c) return c;
  }
  throw ConvergenceError("solve_C1: Newton did not converge");
}

EquilibriumMeasure make_measure(int theta, double u, double v, const Potential& P, const ContourSpec& C) {
  EquilibriumMeasure m;
  m.theta = theta;
  m.u = u;
  m.v = v;
  m.t = P.t;
  m.n_in = detail::n_in_coefficients(u, v, P, C);
  return m;
}

}  // namespace

A2A3 compute_A2_A3(double c, const Potential& P, const ContourSpec& C) {
  const auto r = detail::contour_integrals(
      C, 4,
      [&](cplx s, cplx* out) {
        const cplx J = j_map(P.theta, c, c, s);
        const cplx w = J * J * P.d2V(J);
        const cplx U = J * P.dV(J);
        out[0] = w / ((s + 1.0) * (s + 1.0));
        out[1] = w / (s + 1.0);
        out[2] = U / (s + 1.0);
        out[3] = U / ((s + 1.0) * (s + 1.0));
      },
      "compute_A2_A3");
  const double th = P.theta;
  const double A2 = r[0] / P.t, A3 = r[1] / P.t, E = r[2] / P.t, m1 = r[3] / P.t;
  A2A3 out{A2, A3, A3 + 1.0 - (th + 1.0) / th * A2, A3 + E - (th + 1.0) / th * A2 - m1 / th};
  if (std::abs(out.identity_residual) > 1e-9 * std::max(1.0, std::abs(A2) + std::abs(A3)))
    throw ConsistencyError("compute_A2_A3: integration-by-parts identity violated");
  return out;
}

HardEdgeEquilibrium solve_C1(const Potential& P, const ContourSpec& C, bool with_ell) {
  P.validate();
  C.validate(P.theta);
  const double th = P.theta;
  auto e_poly = curve_polynomial(P, C, 1);
  e_poly[0] -= P.t;
  double c = largest_positive_root(e_poly);
  if (!std::isfinite(c)) throw ConvergenceError("solve_C1: E(c, c) = t has no positive root");
  c = newton_c(c, P, C);

  HardEdgeEquilibrium eq;
  eq.theta = P.theta;
  eq.t = P.t;
  eq.c = c;
  eq.b = c * std::pow(1.0 + th, 1.0 + 1.0 / th) / th;
  const double F = contour_F(c, c, P, C);
  if (std::abs(F - (1.0 + th) * P.t) > 1e-9 * std::max(1.0, P.t))
    throw ConsistencyError("solve_C1: F(c, c) = (1 + theta) t fails at the converged c");
  const auto a23 = compute_A2_A3(c, P, C);
  eq.A2 = a23.A2;
  eq.A3 = a23.A3;
  eq.measure = make_measure(P.theta, c, c, P, C);
  eq.measure.a = 0.0;
  eq.measure.b = eq.b;
  eq.measure.s_a = -1.0;
  eq.measure.s_b = 1.0 / th;
  eq.m1 = eq.measure.n_in.size() > 1 ? eq.measure.n_in[1] : 0.0;
  eq.A1 = eq.measure.n_in.size() > 2 ? eq.measure.n_in[2] : 0.0;
  eq.rho = eq.A1 * std::pow(c, -2.0 * th / (th + 1.0));
  eq.d1 = eq.rho * std::sin(2.0 * kPi / (th + 1.0)) / kPi;
  eq.dc_dt = c / (P.t * (1.0 + eq.A3));
  eq.negative_density = eq.m1 < -1e-10 * std::max(1.0, eq.A1);
  if (with_ell) eq.ell = g_and_ell(eq.measure, P).ell;
  return eq;
}

std::pair<double, double> transition_point(const Potential& P, const ContourSpec& C) {
  P.validate();
  C.validate(P.theta);
  auto m_poly = curve_polynomial(P, C, 2);
  m_poly.erase(m_poly.begin());  // divide out the root c = 0
  const double cstar = largest_positive_root(m_poly);
  if (!std::isfinite(cstar)) return {0.0, 0.0};
  const auto e_poly = curve_polynomial(P, C, 1);
  double tc = 0.0, pw = 1.0;
  for (double a : e_poly) {
    tc += a * pw;
    pw *= cstar;
  }
  if (!(tc > 0.0)) return {0.0, 0.0};
  return {cstar, tc};
}

Regime classify(const Potential& P, const ContourSpec& C) {
  const auto [cstar, tc] = transition_point(P, C);
  if (tc <= 0.0 || P.t > tc * (1.0 + 1e-12)) return Regime::hard;
  if (P.t >= tc * (1.0 - 1e-12)) return Regime::transition;
  return Regime::soft;
}

SoftEdgeEquilibrium solve_C2(const Potential& P, const ContourSpec& C, bool with_ell) {
  P.validate();
  C.validate(P.theta);
  const double th = P.theta;
  auto [cstar, tc] = transition_point(P, C);
  if (tc <= 0.0) throw DomainError("solve_C2: the potential has no transition point; it is hard-edge for all t");
  if (P.t > tc * (1.0 + 1e-12)) throw DomainError("solve_C2: t is above the transition scale (hard-edge regime)");

  tc = contour_E(cstar, cstar, P.with_t(1.0), C);
  const Potential W = P.with_t(tc);

  double u = cstar, v = cstar;
  if (P.t < tc * (1.0 - 1e-14)) {
    // Tangent of the soft-edge curve at the critical point, in t' = t / t_c.
    const auto a23 = compute_A2_A3(cstar, W, C);
    const double A1 = contour_moment(cstar, cstar, W, C, 2);
    const double A2 = a23.A2;
    if (A2 == 0.0 || A1 == 0.0) throw DomainError("solve_C2: A2 = 0 or A1 = 0 at the critical point");
    const double w = th * cstar / ((th * th - 1.0) * A1 * A2);
    const double du_dt = ((th - 1.0) * A1 + th * A2) * w / tc;
    const double dv_dt = ((th - 1.0) * A1 - A2) * w / tc;

    double t_cur = tc;
    double step = std::min(0.01 * tc, tc - P.t);
    double slope_u = du_dt, slope_v = dv_dt;
    while (t_cur > P.t) {
      const double t_next = std::max(P.t, t_cur - step);
      double nu = u + slope_u * (t_next - t_cur);
      double nv = v + slope_v * (t_next - t_cur);
      const int its = newton_uv(nu, nv, P.with_t(1.0), C, t_next);
      if (its < 0) {
        step *= 0.5;
        if (step < 1e-9 * tc) throw ConvergenceError("solve_C2: continuation step underflow");
        continue;
      }
      // Secant slope from the last accepted step predicts the next one.
      slope_u = (nu - u) / (t_next - t_cur);
      slope_v = (nv - v) / (t_next - t_cur);
      t_cur = t_next;
      u = nu;
      v = nv;
      if (its <= 4) step *= 1.5;
    }
  }

  SoftEdgeEquilibrium eq;
  eq.theta = P.theta;
  eq.t = P.t;
  eq.c1 = u;
  eq.c0 = v;
  eq.t_critical = tc;
  const double disc = std::sqrt(4.0 * th * v * u + (th - 1.0) * (th - 1.0) * u * u);
  eq.s_a = -(th - 1.0) / (2.0 * th) - disc / (2.0 * th * u);
  eq.s_b = -(th - 1.0) / (2.0 * th) + disc / (2.0 * th * u);
  // At the critical point s_a = -1 is the branch point; J vanishes there.
  eq.a_hat = std::abs(eq.s_a + 1.0) < 1e-14 ? 0.0 : j_map(P.theta, u, v, eq.s_a).real();
  eq.b_hat = j_map(P.theta, u, v, eq.s_b).real();
  if (eq.a_hat < -1e-12) throw ConsistencyError("solve_C2: left endpoint is negative");
  eq.a_hat = std::max(eq.a_hat, 0.0);
  if (!(eq.a_hat < eq.b_hat)) throw ConsistencyError("solve_C2: endpoints out of order");
  eq.measure = make_measure(P.theta, u, v, P, C);
  eq.measure.a = eq.a_hat;
  eq.measure.b = eq.b_hat;
  eq.measure.s_a = eq.s_a;
  eq.measure.s_b = eq.s_b;
  // Exact square-root constant from N'_In(s_b) and J''(s_b).
  {
    const double s = eq.s_b;
    const double L = u / (u * s + v) + (1.0 / (s + 1.0) - 1.0 / s) / th;
    const double dL = -u * u / ((u * s + v) * (u * s + v)) + (1.0 / (s * s) - 1.0 / ((s + 1.0) * (s + 1.0))) / th;
    const double j2 = eq.b_hat * (L * L + dL);
    eq.d2_hat_exact = eq.measure.dN(eq.s_b).real() * std::sqrt(2.0 / j2) / (kPi * eq.b_hat);
  }
  eq.d2_hat = fit_right_edge(eq.measure).d2;
  if (with_ell) eq.ell_hat = g_and_ell(eq.measure, P).ell;
  return eq;
}

}  // namespace edgetrans
