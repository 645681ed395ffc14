#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgetrans/chazy.hpp"
#include "edgetrans/errors.hpp"
#include "edgetrans/polyroots.hpp"

namespace edgetrans {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kR = kSqrt2 / 3.0;  // the recurring sqrt(2)/3
constexpr int kHopOrder = 24;

// Truncated power series in (tau - tau0); every operation keeps `size` terms.
struct Series {
  std::vector<double> v;

  Series(std::size_t size, double constant = 0.0) : v(size, 0.0) { v[0] = constant; }
  friend Series operator+(Series x, const Series& y) {
    for (std::size_t i = 0; i < x.v.size(); ++i) x.v[i] += y.v[i];
    return x;
  }
  friend Series operator-(Series x, const Series& y) {
    for (std::size_t i = 0; i < x.v.size(); ++i) x.v[i] -= y.v[i];
    return x;
  }
  friend Series operator-(Series x) {
    for (double& e : x.v) e = -e;
    return x;
  }
  friend Series operator*(double s, Series x) {
    for (double& e : x.v) e *= s;
    return x;
  }
  friend Series operator*(const Series& x, const Series& y) {
    Series out(x.v.size());
    for (std::size_t i = 0; i < x.v.size(); ++i) {
      if (x.v[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < x.v.size(); ++j) out.v[i + j] += x.v[i] * y.v[j];
    }
    return out;
  }
};

// Printed right-hand sides (derivative / sqrt 2), generic over double and Series.
template <class T>
std::array<T, 6> printed_rhs(const T& tau, const T& c, const T& b, const T& f, const T& a, const T& k, const T& d) {
  const T tau2 = tau * tau;
  const double r = kR, r2 = 2.0 / 9.0;
  T dc = -(c * c) - b - f;
  T db = -(c * f) - k + r * (tau * (b + c * c)) + r2 * (tau2 * c);
  T df = -(b * c) + a - r * (tau * (f + c * c)) + r2 * (tau2 * c);
  T da = 2.0 * (b * f) + f * f - c * k + d - (1.0 / 3.0) * f -
         r * (tau * (b * c - a - k - (1.0 / 3.0) * c)) - r2 * (tau2 * (b + f));
  T dk = -(b * b) - 2.0 * (b * f) - a * c - d - (1.0 / 3.0) * b -
         r * (tau * (c * f + a + k + (1.0 / 3.0) * c)) + r2 * (tau2 * (b + f));
  T dd = 2.0 * (c * d) - b * k + a * f + (2.0 / 3.0) * a + (2.0 / 3.0) * k -
         r * (tau * (f * f - b * b - a * c - c * k + (2.0 / 3.0) * b + (2.0 / 3.0) * f));
  return {dc, db, df, da, dk, dd};
}

double sum_sq3(double b, double f) { return b * b + b * f + f * f; }

// d from the spectral constraint.
double solve_d(double tau, double c, double b, double f, double a, double k, double g) {
  return -c * (k - a) + kR * tau * (a + k) + sum_sq3(b, f) - (b - f) / 3.0 + g;
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 conj_d(const Mat3& m) {
  const double D[3] = {1.0, kSqrt2, 2.0};
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = m[i][j] * (D[i] / D[j]);
  return out;
}

Mat3 mul(const Mat3& x, const Mat3& y) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) out[i][j] += x[i][l] * y[l][j];
  return out;
}

// 2^{-3/2} A0 + A_{-1}/xi and xi B1/2 + sqrt(2) B0, before conjugation by D.
void lax_inner(const ChazyState& s, std::complex<double> xi, Mat3& A, Mat3& B) {
  const auto am = a_minus1(s);
  const double q = 1.0 / (2.0 * kSqrt2), t = s.tau;
  A = Mat3{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A[i][j] = am[i][j] / xi;
  A[1][0] += q;
  A[2][0] += q * (-kR * t);
  A[2][1] += q;
  B = Mat3{};
  B[0][0] = -s.c;
  B[0][1] = 1.0;
  B[1][0] = s.f - kR * t * s.c;
  B[1][2] = 1.0;
  B[2][0] = kR * t * (s.b + s.f) - (s.a + s.k);
  B[2][1] = s.b + kR * t * s.c;
  B[2][2] = s.c;
  for (auto& row : B)
    for (auto& e : row) e *= kSqrt2;
  B[2][0] += -0.5 * xi;
}

}  // namespace

double gamma_const(double alpha) { return 1.0 / 36.0 + alpha / 12.0 - alpha * alpha / 12.0; }

ChazyState complete_from_c(double c, double cp, double cpp, double tau, double alpha) {
  ChazyState s;
  s.tau = tau;
  s.alpha = alpha;
  s.gamma = gamma_const(alpha);
  const double g = s.gamma;
  const double cc = c * c;
  s.c = c;
  s.b = -0.5 * (cp / kSqrt2 + cc + kR * tau * c) + 0.5 * g;
  s.f = -0.5 * (cp / kSqrt2 + cc - kR * tau * c) - 0.5 * g;
  const double common = 0.25 * cpp + 1.5 / kSqrt2 * c * cp + 0.5 * cc * c;
  const double tau_term = g * tau / (3.0 * kSqrt2);
  s.a = -common + 0.5 * c * (-(2.0 / 9.0) * tau * tau + g + 1.0 / 3.0) - tau_term;
  s.k = common + 0.5 * c * ((2.0 / 9.0) * tau * tau + g + 1.0 / 3.0) + tau_term;
  s.d = solve_d(tau, s.c, s.b, s.f, s.a, s.k, g);
  return s;
}

ChazyState complete_on_spectral_level(double c, double cp, double tau, double alpha, int root) {
  if (root != 0 && root != 1) throw DomainError("complete_on_spectral_level: root must be 0 or 1");
  const double target = det_target(alpha);
  auto q = [&](double cpp) { return det_a_minus1(complete_from_c(c, cp, cpp, tau, alpha)) - target; };
  const double q0 = q(0.0), qp = q(1.0), qm = q(-1.0);
  const double A2 = 0.5 * (qp + qm) - q0, A1 = 0.5 * (qp - qm), A0 = q0;
  const double disc = A1 * A1 - 4.0 * A2 * A0;
  if (disc < 0.0) throw DomainError("complete_on_spectral_level: no real c'' on the spectral level for this (c, c')");
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (A1 + std::copysign(sq, A1));
  double r1 = qq / A2, r2 = (qq != 0.0) ? A0 / qq : r1;
  if (r1 > r2) std::swap(r1, r2);
  double x = root == 0 ? r1 : r2;
  for (int it = 0; it < 3; ++it) {
    const double slope = 2.0 * A2 * x + A1;
    if (slope == 0.0) break;
    x -= q(x) / slope;
  }
  return complete_from_c(c, cp, x, tau, alpha);
}

std::array<double, 3> constraint_residuals(const ChazyState& s) {
  const double g = s.gamma;
  return {s.f - s.b - kR * s.c * s.tau + g, s.a + s.k - s.c * (g + 1.0 / 3.0),
          s.d + s.c * (s.k - s.a) - kR * s.tau * (s.a + s.k) - sum_sq3(s.b, s.f) + (s.b - s.f) / 3.0 - g};
}

ChazyRates ode_rhs(const ChazyState& s) {
  const auto r = printed_rhs<double>(s.tau, s.c, s.b, s.f, s.a, s.k, s.d);
  return {kSqrt2 * r[0], kSqrt2 * r[1], kSqrt2 * r[2], kSqrt2 * r[3], kSqrt2 * r[4], kSqrt2 * r[5]};
}

ChazyJet chazy_jet(const ChazyState& s, int order) {
  if (order < 0) throw DomainError("chazy_jet: order must be >= 0");
  const std::size_t L = order + 1;
  std::array<Series, 6> x{Series(L, s.c), Series(L, s.b), Series(L, s.f),
                          Series(L, s.a), Series(L, s.k), Series(L, s.d)};
  Series tau(L, s.tau);
  if (L > 1) tau.v[1] = 1.0;
  // Coefficient m of the right-hand side depends on coefficients <= m only.
  for (int m = 0; m < order; ++m) {
    const auto r = printed_rhs<Series>(tau, x[0], x[1], x[2], x[3], x[4], x[5]);
    for (int i = 0; i < 6; ++i) x[i].v[m + 1] = kSqrt2 * r[i].v[m] / (m + 1);
  }
  ChazyJet J;
  J.tau = s.tau;
  for (int i = 0; i < 6; ++i) J.coeffs[i] = std::move(x[i].v);
  return J;
}

std::vector<double> c_derivatives(const ChazyState& s, int order) {
  const auto J = chazy_jet(s, order);
  std::vector<double> out(order + 1);
  double fact = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    out[j] = fact * J.coeffs[0][j];
  }
  return out;
}

ChazyState taylor_advance(const ChazyState& s, double h) {
  ChazyState cur = s;
  const double end = s.tau + h;
  for (int hops = 0; cur.tau != end; ++hops) {
    if (hops > 100000) throw ConvergenceError("taylor_advance: hop size collapsed (near a pole?)");
    const auto J = chazy_jet(cur, kHopOrder);
    double scale = 1.0, tail = 0.0;
    for (const auto& co : J.coeffs) {
      scale = std::max(scale, std::abs(co[0]));
      tail = std::max({tail, std::abs(co[kHopOrder]), std::abs(co[kHopOrder - 1])});
    }
    // Last retained term below 1e-18 of the state size.
    double hop = tail > 0.0 ? std::pow(1e-18 * scale / tail, 1.0 / (kHopOrder - 1)) : std::abs(end - cur.tau);
    hop = std::min(hop, std::abs(end - cur.tau));
    const double step = std::copysign(hop, end - cur.tau);
    double vals[6];
    for (int i = 0; i < 6; ++i) {
      const auto& co = J.coeffs[i];
      double acc = co[kHopOrder];
      for (int m = kHopOrder - 1; m >= 0; --m) acc = acc * step + co[m];
      vals[i] = acc;
    }
    cur.c = vals[0], cur.b = vals[1], cur.f = vals[2], cur.a = vals[3], cur.k = vals[4], cur.d = vals[5];
    cur.tau = (hop == std::abs(end - cur.tau)) ? end : cur.tau + step;
  }
  return cur;
}

std::array<std::array<double, 3>, 3> a_minus1(const ChazyState& s) {
  const double t = s.tau;
  return {{{s.b, s.c + kR * t, -1.0},
           {s.a, -s.b - s.f + 1.0 / 3.0, -s.c + kR * t},
           {s.d, s.k, s.f + 2.0 / 3.0}}};
}

double det_target(double alpha) {
  return -(alpha * alpha * alpha / 108.0 + alpha * alpha / 72.0 - alpha / 24.0);
}

double det_a_minus1(const ChazyState& s) { return det3(a_minus1(s)); }

std::vector<std::complex<double>> a_minus1_eigenvalues(const ChazyState& s) {
  const auto m = a_minus1(s);
  const double tr = m[0][0] + m[1][1] + m[2][2];
  const double minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) + (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                        (m[1][1] * m[2][2] - m[1][2] * m[2][1]);
  return polynomial_roots({-det3(m), minors, -tr, 1.0});
}

std::array<double, 3> spectrum_target(double alpha) {
  return {0.5 - alpha / 3.0, alpha / 6.0, 0.5 + alpha / 6.0};
}

double spectrum_error(const ChazyState& s) {
  auto ev = a_minus1_eigenvalues(s);
  auto tg = spectrum_target(s.alpha);
  auto lex = [](const std::complex<double>& x, const std::complex<double>& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(ev.begin(), ev.end(), lex);
  std::sort(tg.begin(), tg.end());
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(ev[i] - tg[i]));
  return worst;
}

LaxPairEval lax_pair(const ChazyState& s, std::complex<double> xi) {
  if (xi == 0.0) throw DomainError("lax_pair: xi must be nonzero");
  Mat3 A, B;
  lax_inner(s, xi, A, B);
  return {xi, conj_d(A), conj_d(B)};
}

double zero_curvature_residual(const ChazyState& s, std::complex<double> xi) {
  if (xi == 0.0) throw DomainError("zero_curvature_residual: xi must be nonzero");
  Mat3 A, B;
  lax_inner(s, xi, A, B);
  const auto r = ode_rhs(s);
  const double q = 1.0 / (2.0 * kSqrt2);
  const double dam[3][3] = {{r.b, r.c + kR, 0.0}, {r.a, -r.b - r.f, -r.c + kR}, {r.d, r.k, r.f}};
  Mat3 Z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Z[i][j] = dam[i][j] / xi;
  Z[2][0] += q * (-kR);  // d/dtau of the A0 entry
  Z[2][0] -= -0.5;       // dB/dxi = B1 / 2
  const Mat3 AB = mul(A, B), BA = mul(B, A);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Z[i][j] += AB[i][j] - BA[i][j];
  double worst = 0.0;
  for (const auto& row : conj_d(Z))
    for (const auto& e : row) worst = std::max(worst, std::abs(e));
  return worst;
}

double residual_third_order(const ChazyState& s) {
  const auto cd = c_derivatives(s, 3);
  const double t = s.tau, al = s.alpha;
  return cd[3] + 3.0 * 2.0 * kSqrt2 * cd[1] * cd[1] + (4.0 / 3.0) * t * t * cd[1] + 4.0 * t * cd[0] +
         kSqrt2 / 9.0 * (1.0 + 3.0 * al - 3.0 * al * al);
}

double residual_chazy1(const ChazyState& s) {
  const auto cd = c_derivatives(s, 3);
  const double ty = kSqrt2 * s.tau, al = s.alpha;
  const double y = cd[0] + ty * ty * ty / 108.0;
  const double y1 = cd[1] / kSqrt2 + ty * ty / 36.0;
  const double y3 = cd[3] / (2.0 * kSqrt2) + 1.0 / 18.0;
  return y3 + 6.0 * y1 * y1 + ty * y - std::pow(ty, 4) / 72.0 + (al - al * al) / 6.0;
}

double residual_chazy_u(const ChazyState& s) {
  const auto cd = c_derivatives(s, 2);
  const double t = s.tau, al = s.alpha;
  const double u = kSqrt2 * cd[0] + (4.0 / 27.0) * t * t * t;
  const double u1 = kSqrt2 * cd[1] + (4.0 / 9.0) * t * t;
  const double u2 = kSqrt2 * cd[2] + (8.0 / 9.0) * t;
  const double lin = t * u1 - u;
  return u2 * u2 + 4.0 * u1 * u1 * u1 - 4.0 * lin * lin + (4.0 / 3.0) * (al - al * al - 1.0) * u1 +
         (4.0 / 27.0) * (al + 1.0) * (2.0 * al - 1.0) * (al - 2.0);
}

double residual_boussinesq(const ChazyState& s) {
  const auto cd = c_derivatives(s, 5);
  const double lam = std::pow(3.0, 0.25) / 2.0, amp = 3.0 * std::sqrt(6.0);
  const double tv = s.tau / lam;
  double v[5];
  double scale = amp;
  for (int j = 0; j < 5; ++j) {
    v[j] = scale * cd[j + 1];
    scale *= lam;
  }
  return v[4] + v[1] * v[1] + v[0] * v[2] + tv * tv * v[2] / 4.0 + 7.0 * tv * v[1] / 4.0 + 2.0 * v[0];
}

}  // namespace edgetrans
