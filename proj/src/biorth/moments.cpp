#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "edgetrans/biorth.hpp"
#include "edgetrans/errors.hpp"

namespace edgetrans {

namespace {

constexpr int kGuardBits = 32;

void check_inputs(const Potential& P, int n, int M, int bits) {
  P.validate();
  if (n < 1) throw DomainError("moments: n must be >= 1");
  if (M < 0) throw DomainError("moments: M must be >= 0");
  if (bits < 12 * n) throw DomainError("moments: precision_bits must be >= 12 n");
  if (P.coeffs.empty() || P.coeffs.back() <= 0.0)
    throw DomainError("moments: V needs a positive leading coefficient");
}

// log of the moment-m integrand in double width.
double log_integrand(const Potential& P, int n, double m, double x) {
  return (m + P.alpha) * std::log(x) - n * P.Vt(x);
}

// Right cut-off X: beyond it every integrand m in [0, M] is below its own
// maximum by (bits + 40) ln 2 and still decreasing.
double cutoff(const Potential& P, int n, int M, int bits) {
  const double drop = (bits + 40) * std::log(2.0);
  std::vector<int> ms{0, M};
  if (M > 1) ms.push_back(M / 2);
  double X = 1.0;
  for (int m : ms) {
    // Coarse maximum on a geometric grid.
    double best = -INFINITY, xbest = 1.0;
    for (double x = 1e-6; x < 1e6; x *= 1.02) {
      const double l = log_integrand(P, n, m, x);
      if (l > best) best = l, xbest = x;
    }
    double x = std::max(xbest, 1e-3);
    while (true) {
      x *= 1.05;
      const double l = log_integrand(P, n, m, x);
      const double slope = (m + P.alpha) / x - n * P.dV(x).real() / P.t;
      if (l < best - drop && slope < 0.0) break;
      if (x > 1e8) throw DomainError("moments: weight does not decay");
    }
    X = std::max(X, x);
  }
  return X;
}

mp::Real eval_V(const Potential& P, const mp::Real& x) {
  const int d = P.degree();
  mp::Real acc(P.coeffs[d - 1], x.precision());
  for (int k = d - 1; k >= 1; --k) {
    acc *= x;
    acc += P.coeffs[k - 1];
  }
  acc *= x;
  return acc;
}

// Double-exponential rule for int_0^X x^{m+alpha} e^{-n V_t} dx, m in [m_lo, m_hi],
// with x(s) = X / (1 + e^{-pi sinh s}).
std::vector<mp::Real> de_moments(const Potential& P, int n, int m_lo, int m_hi, int bits) {
  const int prec = bits + kGuardBits;
  const int count = m_hi - m_lo + 1;
  const double X = cutoff(P, n, m_hi, bits);
  const mp::Real Xr(X, prec);
  const mp::Real pi = mp::pi(prec);
  mp::Real n_over_t(static_cast<double>(n), prec);
  n_over_t /= P.t;
  const mp::Real alpha(P.alpha, prec);
  const mp::Real tiny = mp::ldexp_one(-(bits + 10), prec);

  // Adds f(s) for all m into acc; returns false when every term is negligible
  // relative to the current sums.
  auto node = [&](double s, std::vector<mp::Real>& acc) {
    const mp::Real sr(s, prec);
    mp::Real e = mp::exp(-(pi * mp::sinh(sr)));
    mp::Real one_plus = e;
    one_plus += 1.0;
    const mp::Real x = Xr / one_plus;
    mp::Real dx = Xr * pi * mp::cosh(sr) * e / (one_plus * one_plus);
    mp::Real logw = -(n_over_t * eval_V(P, x));
    if (P.alpha != 0.0 || m_lo != 0) logw += (alpha + mp::Real(static_cast<double>(m_lo), prec)) * mp::log(x);
    mp::Real term = mp::exp(logw) * dx;
    bool significant = false;
    for (int i = 0; i < count; ++i) {
      if (i > 0) term *= x;
      if (!significant && (acc[i].is_zero() || mp::abs(term) > mp::abs(acc[i]) * tiny)) significant = true;
      acc[i] += term;
    }
    return significant;
  };

  // Nodes +-(offset + k h), outward until 8 consecutive negligible ones.
  auto sweep = [&](double h, double offset, std::vector<mp::Real>& acc) {
    for (int dir : {+1, -1}) {
      int quiet = 0;
      for (int k = (dir < 0 && offset == 0.0) ? 1 : 0;; ++k) {
        const double s = dir * (offset + k * h);
        if (std::abs(s) > 10.0) break;
        quiet = node(s, acc) ? 0 : quiet + 1;
        if (quiet >= 8) break;
      }
    }
  };

  double h = 0.5;
  std::vector<mp::Real> raw(count, mp::Real(prec));
  sweep(h, 0.0, raw);
  std::vector<mp::Real> prev(count, mp::Real(prec));
  for (int i = 0; i < count; ++i) prev[i] = raw[i] * h;

  const double target = std::ldexp(1.0, -(bits / 2 + 16));
  for (int level = 1; level <= 14; ++level) {
    std::vector<mp::Real> odd(count, mp::Real(prec));
    sweep(h, 0.5 * h, odd);
    h *= 0.5;
    double worst = 0.0;
    std::vector<mp::Real> cur(count, mp::Real(prec));
    for (int i = 0; i < count; ++i) {
      raw[i] += odd[i];
      cur[i] = raw[i] * h;
      const mp::Real diff = mp::abs(cur[i] - prev[i]) / mp::abs(cur[i]);
      worst = std::max(worst, diff.to_double());
    }
    prev = std::move(cur);
    if (level >= 3 && worst <= target) {
      for (auto& v : prev) mpfr_prec_round(v.get(), bits, MPFR_RNDN);
      return prev;
    }
  }
  throw ConvergenceError("moments: double-exponential quadrature did not converge");
}

MomentTable make_table(const Potential& P, int n, int bits) {
  MomentTable T;
  T.P = P;
  T.n = n;
  T.precision_bits = bits;
  return T;
}

}  // namespace

int default_precision_bits(int n) { return std::max(128, 12 * n); }

int required_moment_index(int theta, int count) { return (count - 1) * (theta + 1) + 1; }

mp::Real moment_quadrature(const Potential& P, int n, int m, int bits) {
  check_inputs(P, n, m, bits);
  return de_moments(P, n, m, m, bits)[0];
}

MomentTable moments_general(const Potential& P, int n, int M, int bits) {
  check_inputs(P, n, M, bits);
  MomentTable T = make_table(P, n, bits);
  T.values = de_moments(P, n, 0, M, bits);
  for (const auto& v : T.values)
    if (v.sign() <= 0) throw ConsistencyError("moments_general: non-positive moment");
  return T;
}

MomentTable moments_quadratic(const Potential& P, int n, int M, int bits) {
  check_inputs(P, n, M, bits);
  if (P.degree() != 2) throw DomainError("moments_quadratic: V must be v2 x^2 + v1 x");
  if (P.alpha <= -1.0) throw DomainError("moments_quadratic: alpha must exceed -1");
  MomentTable T = make_table(P, n, bits);
  const int prec = bits + kGuardBits;
  auto seeds = de_moments(P, n, 0, std::min(M, 1), bits);
  T.values.reserve(M + 1);
  for (auto& s : seeds) {
    mpfr_prec_round(s.get(), prec, MPFR_RNDN);
    T.values.push_back(std::move(s));
  }
  const double v1 = P.coeffs[0], v2 = P.coeffs[1];
  mp::Real t_over_n(P.t, prec);
  t_over_n /= static_cast<double>(n);
  const mp::Real alpha(P.alpha, prec);
  for (int m = 1; m < M; ++m) {
    mp::Real next = t_over_n * T.values[m - 1];
    next *= alpha + mp::Real(static_cast<double>(m), prec);
    next -= T.values[m] * v1;
    next /= 2.0 * v2;
    T.values.push_back(std::move(next));
  }
  for (auto& v : T.values) {
    mpfr_prec_round(v.get(), bits, MPFR_RNDN);
    if (v.sign() <= 0) throw ConsistencyError("moments_quadratic: non-positive moment (recurrence unstable)");
  }
  const mp::Real tol(1e-25, bits);
  for (int m : {5, 17, 40}) {
    if (m > M) continue;
    const mp::Real direct = de_moments(P, n, m, m, bits)[0];
    const mp::Real rel = mp::abs(direct - T.values[m]) / direct;
    if (rel > tol)
      throw ConsistencyError("moments_quadratic: recurrence disagrees with quadrature at m = " + std::to_string(m) +
                             " (relative " + rel.to_string(4) + ")");
  }
  return T;
}

std::string MomentTable::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "# edgetrans moment table\n";
  os << "precision_bits " << precision_bits << "\n";
  os << "n " << n << "\n";
  os << "theta " << P.theta << "\n";
  os << "alpha " << P.alpha << "\n";
  os << "t " << P.t << "\n";
  os << "coeffs";
  for (double c : P.coeffs) os << ' ' << c;
  os << "\ncount " << values.size() << "\n";
  for (const auto& v : values) os << v.to_string() << "\n";
  return os.str();
}

MomentTable MomentTable::from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line, key;
  MomentTable T;
  std::size_t count = 0;
  auto expect = [&](const char* want) {
    if (!(is >> key) || key != want) throw DomainError(std::string("moment table: expected '") + want + "'");
  };
  std::getline(is, line);
  if (line.rfind("# edgetrans moment table", 0) != 0) throw DomainError("moment table: bad header");
  expect("precision_bits");
  is >> T.precision_bits;
  expect("n");
  is >> T.n;
  expect("theta");
  is >> T.P.theta;
  expect("alpha");
  is >> T.P.alpha;
  expect("t");
  is >> T.P.t;
  expect("coeffs");
  std::getline(is, line);
  std::istringstream cs(line);
  for (double c; cs >> c;) T.P.coeffs.push_back(c);
  expect("count");
  is >> count;
  for (std::size_t i = 0; i < count; ++i) {
    std::string s;
    if (!(is >> s)) throw DomainError("moment table: truncated");
    T.values.emplace_back(s, T.precision_bits);
  }
  T.P.validate();
  return T;
}

}  // namespace edgetrans
