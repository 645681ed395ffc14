#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "edgetrans/specialfn.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;

// Ai(0) and -Ai'(0).
constexpr long double kAi0 = 0.355028053887817239260063186004183176397979174199177573L;
constexpr long double kMinusAip0 = 0.258819403792806798405183560189203963479091138354934582L;

constexpr int kMaxCoeffs = 100;

// u_k, v_k of the Airy asymptotic expansions.
struct AsymptoticCoefficients {
  std::array<double, kMaxCoeffs> u{}, v{};
  AsymptoticCoefficients() {
    u[0] = v[0] = 1.0;
    for (int k = 1; k < kMaxCoeffs; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c;
  return c;
}

// e^w E_p(w) by the Legendre continued fraction (modified Lentz); Re w >= 0.
cplx scaled_expint(int p, cplx w) {
  constexpr double tiny = 1e-300;
  cplx b = w + static_cast<double>(p);
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * (p - 1 + i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return h;
  }
  throw ConvergenceError("airy: terminant continued fraction did not converge");
}

// Olver's terminant G_p(w) = e^w Gamma(p) Gamma(1-p, w) / (2 pi).
cplx terminant(int p, cplx w) {
  const cplx lead = std::exp(std::lgamma(static_cast<double>(p)) + (1.0 - p) * std::log(w));
  return lead * scaled_expint(p, w) / (2.0 * kPi);
}

// sum_k (-1)^k a_k zeta^{-k} with the exponentially-improved remainder when
// the plain series cannot reach full precision before its smallest term.
// `stokes` is the sign linking the recessive series to its dominant partner:
// +1 for Ai/Bi, -1 for Ai'/Bi', whose prefactors differ in sign.
cplx asymptotic_sum(const std::array<double, kMaxCoeffs>& a, cplx zeta, double stokes) {
  const double az = std::abs(zeta);
  const cplx zinv = 1.0 / zeta;
  if (az > 20.0) {
    cplx sum = 0.0, pw = 1.0;
    for (int k = 0; k < kMaxCoeffs; ++k) {
      const cplx term = (k % 2 ? -a[k] : a[k]) * pw;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      pw *= zinv;
    }
    return sum;
  }
  const int n = static_cast<int>(std::floor(2.0 * az)) + 1;
  const int m = std::min(10, n);
  cplx sum = 0.0, pw = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += (k % 2 ? -a[k] : a[k]) * pw;
    pw *= zinv;
  }
  cplx rem = 0.0;
  pw = 1.0;
  for (int k = 0; k < m; ++k) {
    rem += (k % 2 ? -a[k] : a[k]) * pw * terminant(n - k, 2.0 * zeta);
    pw *= zinv;
  }
  return sum + stokes * (n % 2 ? -rem : rem);
}

}  // namespace

AiryValue airy_series(double x) {
  const long double xl = x, x3 = xl * xl * xl;
  // f, g and their derivatives: Ai = Ai(0) f - (-Ai'(0)) g.
  long double tf = 1.0L, tg = xl, tdf = xl * xl / 2.0L, tdg = 1.0L;
  long double f = tf, g = tg, df = tdf, dg = tdg;
  long double peak = std::max({std::fabs(f), std::fabs(g), std::fabs(df), 1.0L});
  for (int k = 0; k < 400; ++k) {
    tf *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
    tg *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
    tdf *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 5.0L));
    tdg *= x3 / ((3.0L * k + 1.0L) * (3.0L * k + 3.0L));
    f += tf;
    g += tg;
    df += tdf;
    dg += tdg;
    const long double biggest = std::max({std::fabs(tf), std::fabs(tg), std::fabs(tdf), std::fabs(tdg)});
    peak = std::max(peak, biggest);
    if (biggest < 1e-22L * peak) break;
  }
  return {static_cast<double>(kAi0 * f - kMinusAip0 * g), static_cast<double>(kAi0 * df - kMinusAip0 * dg)};
}

AiryValue airy_asymptotic(double x) {
  if (x == 0.0) throw DomainError("airy_asymptotic: x = 0 is outside the asymptotic regime");
  const auto& c = coefficients();
  const double ax = std::fabs(x);
  const double zeta = 2.0 / 3.0 * ax * std::sqrt(ax);
  const double q = std::pow(ax, 0.25);
  const double norm = 1.0 / (2.0 * std::sqrt(kPi));
  if (x > 0.0) {
    const double e = std::exp(-zeta);
    return {norm * e / q * asymptotic_sum(c.u, zeta, 1.0).real(), -norm * q * e * asymptotic_sum(c.v, zeta, -1.0).real()};
  }
  // Ai(-X) = 2 Re[e^{i pi/3} Ai(X e^{i pi/3})], where the rotated argument has
  // zeta -> i zeta and X^{1/4} -> X^{1/4} e^{i pi/12}.
  const cplx i(0.0, 1.0);
  const cplx iz = i * zeta;
  const cplx rot = std::polar(1.0, kPi / 12.0);
  const cplx osc = std::exp(-iz);
  const cplx ai_rot = norm * osc / (q * rot) * asymptotic_sum(c.u, iz, 1.0);
  const cplx aip_rot = -norm * q * rot * osc * asymptotic_sum(c.v, iz, -1.0);
  const double ai = 2.0 * (std::polar(1.0, kPi / 3.0) * ai_rot).real();
  const double aip = -2.0 * (std::polar(1.0, 2.0 * kPi / 3.0) * aip_rot).real();
  return {ai, aip};
}

AiryValue airy(double x) {
  if (!(std::fabs(x) <= 200.0)) throw DomainError("airy: |x| > 200 overflows the supported range");
  return std::fabs(x) <= 6.0 ? airy_series(x) : airy_asymptotic(x);
}

}  // namespace edgetrans
