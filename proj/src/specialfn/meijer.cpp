#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "edgetrans/specialfn.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;

void check_params(int theta, double alpha) {
  if (theta < 1) throw DomainError("MeijerParams: theta must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("MeijerParams: alpha must be > -1");
}

bool near_integer(double v) { return std::fabs(v - std::round(v)) < 1e-12; }

// log(1/Gamma(z)) for a denominator gamma; -inf real part at the poles so that
// exp() gives the zero the integrand really has there.
cplx log_rgamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    return {-std::numeric_limits<double>::infinity(), 0.0};
  return -complex_lgamma(z);
}

// 1/Gamma(a) in long double, zero at the poles.
long double rgamma(long double a) {
  if (a <= 0.0L && a == std::floor(a)) return 0.0L;
  return 1.0L / std::tgamma(a);
}

// Sums terms t_k given t_0 and the ratio t_{k+1}/t_k, stopping once ten
// consecutive terms fall below 1e-18 of the largest term seen.
template <class Ratio>
long double sum_series(long double first, Ratio ratio) {
  long double term = first, sum = first, peak = std::fabs(first);
  int small = 0;
  for (int k = 0; k < 5000; ++k) {
    term *= ratio(k);
    sum += term;
    peak = std::max(peak, std::fabs(term));
    small = std::fabs(term) < 1e-18L * peak ? small + 1 : 0;
    if (small >= 10) return sum;
  }
  throw ConvergenceError("meijer: residue series did not converge");
}

}  // namespace

MeijerParams meijer_params_g10(int theta, double alpha) {
  check_params(theta, alpha);
  MeijerParams p{theta, alpha, {0.0}};
  for (int j = 0; j < theta; ++j) p.b.push_back((j - alpha) / theta);
  return p;
}

MeijerParams meijer_params_gtheta0(int theta, double alpha) {
  check_params(theta, alpha);
  MeijerParams p{theta, alpha, {}};
  for (int j = 1; j <= theta; ++j) p.b.push_back((alpha - theta + j) / theta);
  p.b.push_back(0.0);
  return p;
}

double meijer_g10(double x, const MeijerParams& p) {
  if (x < 0.0) throw DomainError("meijer_g10: x must be >= 0");
  const long double b0 = p.b[0];
  const std::size_t q = p.b.size();
  // Residue of Gamma(b0 + s) at s = -b0 - k:
  //   (-1)^k x^{b0+k} / (k! prod_{j>=1} Gamma(1 - b_j + b0 + k)).
  // Skip leading terms killed by 1/Gamma at a pole so the ratio recurrence
  // starts from a nonzero term.
  int k0 = 0;
  for (std::size_t j = 1; j < q; ++j) {
    const long double a = 1.0L - p.b[j] + b0;
    if (a <= 0.0L && a == std::floor(a)) k0 = std::max(k0, static_cast<int>(-a) + 1);
  }
  if (x == 0.0) {
    if (k0 != 0 || b0 != 0.0L) return 0.0;
    long double v = 1.0L;
    for (std::size_t j = 1; j < q; ++j) v *= rgamma(1.0L - p.b[j]);
    return static_cast<double>(v);
  }
  const long double xl = x;
  long double first = std::pow(xl, b0 + k0) / std::tgamma(static_cast<long double>(k0) + 1.0L);
  if (k0 % 2) first = -first;
  for (std::size_t j = 1; j < q; ++j) first *= rgamma(1.0L - p.b[j] + b0 + k0);
  const long double s = sum_series(first, [&](int i) {
    const long double k = k0 + i;
    long double r = -xl / (k + 1.0L);
    for (std::size_t j = 1; j < q; ++j) r /= (1.0L - p.b[j] + b0 + k);
    return r;
  });
  return static_cast<double>(s);
}

double meijer_g_theta0(double x, const MeijerParams& p) {
  if (x < 0.0) throw DomainError("meijer_g_theta0: x must be >= 0");
  const int m = static_cast<int>(p.b.size()) - 1;  // numerator gammas
  const long double blast = p.b[m];
  for (int h = 0; h < m; ++h)
    for (int j = h + 1; j < m; ++j)
      if (near_integer(p.b[j] - p.b[h]))
        throw DomainError("meijer_g_theta0: degenerate parameters (numerator b differ by an integer)");
  if (x == 0.0) {
    long double v = 0.0L;
    for (int h = 0; h < m; ++h) {
      if (p.b[h] < 0.0) return std::numeric_limits<double>::infinity();
      if (p.b[h] > 0.0) continue;
      long double c = rgamma(1.0L - blast);
      for (int j = 0; j < m; ++j)
        if (j != h) c *= std::tgamma(static_cast<long double>(p.b[j]) - p.b[h]);
      v += c;
    }
    return static_cast<double>(v);
  }
  const long double xl = x;
  long double total = 0.0L;
  for (int h = 0; h < m; ++h) {
    const long double bh = p.b[h];
    // Residue at s = -bh - k:
    //   (-1)^k x^{bh+k}/k! prod_{j!=h} Gamma(b_j - bh - k) / Gamma(1 - blast + bh + k).
    int k0 = 0;
    const long double a = 1.0L - blast + bh;
    if (a <= 0.0L && a == std::floor(a)) k0 = static_cast<int>(-a) + 1;
    long double first = std::pow(xl, bh + k0) / std::tgamma(static_cast<long double>(k0) + 1.0L);
    if (k0 % 2) first = -first;
    for (int j = 0; j < m; ++j)
      if (j != h) first *= std::tgamma(static_cast<long double>(p.b[j]) - bh - k0);
    first *= rgamma(a + k0);
    total += sum_series(first, [&](int i) {
      const long double k = k0 + i;
      long double r = -xl / (k + 1.0L);
      for (int j = 0; j < m; ++j)
        if (j != h) r /= (static_cast<long double>(p.b[j]) - bh - k - 1.0L);
      r /= (a + k);
      return r;
    });
  }
  return static_cast<double>(total);
}

OracleResult mellin_barnes_oracle(double x, const MeijerParams& p, MeijerKind kind) {
  if (!(x > 0.0)) throw DomainError("mellin_barnes_oracle: x must be > 0");
  const double lx = std::log(x);
  const std::size_t q = p.b.size();
  const cplx i(0.0, 1.0);
  constexpr double kFloor = 1e-18;
  constexpr double kMaxImag = 400.0;

  if (kind == MeijerKind::gtheta0) {
    const std::size_t m = q - 1;
    double bmin = p.b[0];
    for (std::size_t j = 0; j < m; ++j) bmin = std::min(bmin, p.b[j]);
    const double sigma = -bmin + 0.5;  // half a unit right of the rightmost pole
    auto integrand = [&](double t) {
      const cplx s(sigma, t);
      cplx lg = log_rgamma(1.0 - p.b[m] - s) - s * lx;
      for (std::size_t j = 0; j < m; ++j) lg += complex_lgamma(p.b[j] + s);
      return std::exp(lg);
    };
    // ds = i dt, so (1/2 pi i) int ... ds = (1/2 pi) int ... dt.
    const double h = 0.05;
    cplx sum = integrand(0.0);
    double peak = std::abs(sum);
    for (int dir : {-1, 1}) {
      int small = 0;
      for (int k = 1;; ++k) {
        const double t = dir * k * h;
        if (std::fabs(t) > kMaxImag)
          throw ConvergenceError("mellin_barnes_oracle: integrand not below tolerance by |Im s| = 400");
        const cplx f = integrand(t);
        sum += f;
        peak = std::max(peak, std::abs(f));
        small = std::abs(f) < kFloor * peak ? small + 1 : 0;
        if (small >= 20) break;
      }
    }
    const cplx val = sum * h / (2.0 * kPi);
    return {val.real(), val.imag()};
  }

  // Loop s(u) = sigma0 + i u - a u^2 enclosing the poles -b0 - k counterclockwise.
  // With sigma0 + b0 = 1 and a = 1/2 every pole sits at Im u = 1 in the
  // parameter plane, so the trapezoid error is about exp(-2 pi / h).
  const double a = 0.5;
  const double sigma0 = 1.0 - p.b[0];
  auto integrand = [&](double u) {
    const cplx s = sigma0 + i * u - a * u * u;
    const cplx ds = i - 2.0 * a * u;
    cplx lg = complex_lgamma(p.b[0] + s) - s * lx;
    for (std::size_t j = 1; j < q; ++j) lg += log_rgamma(1.0 - p.b[j] - s);
    return std::exp(lg) * ds;
  };
  const double h = 0.05;
  cplx sum = integrand(0.0);
  double peak = std::abs(sum);
  for (int dir : {-1, 1}) {
    int small = 0;
    for (int k = 1;; ++k) {
      const double u = dir * k * h;
      if (std::fabs(u) > kMaxImag)
        throw ConvergenceError("mellin_barnes_oracle: loop integrand not below tolerance by |u| = 400");
      const cplx f = integrand(u);
      sum += f;
      peak = std::max(peak, std::abs(f));
      small = std::abs(f) < kFloor * peak ? small + 1 : 0;
      if (small >= 20) break;
    }
  }
  const cplx val = sum * h / (2.0 * kPi * i);
  return {val.real(), val.imag()};
}

}  // namespace edgetrans
