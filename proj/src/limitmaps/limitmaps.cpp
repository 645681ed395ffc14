#include "edgetrans/limitmaps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "edgetrans/errors.hpp"
#include "edgetrans/polyroots.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;

void check_theta(int theta) {
  if (theta < 2) throw DomainError("limitmaps: theta must be an integer >= 2");
}

// K in J = K w - w^{theta+1}.
double k_coeff(int theta) {
  return (theta + 1) * std::pow(static_cast<double>(theta), -static_cast<double>(theta) / (theta + 1));
}

// Critical point w0 = theta^{-1/(theta+1)} of K w - w^{theta+1}.
double w_critical(int theta) { return std::pow(static_cast<double>(theta), -1.0 / (theta + 1)); }

cplx j_of_w(int theta, cplx w) { return k_coeff(theta) * w - std::pow(w, theta + 1); }

cplx newton_polish(int theta, cplx w, cplx zeta) {
  const double K = k_coeff(theta);
  for (int it = 0; it < 30; ++it) {
    const cplx wp = std::pow(w, theta);
    const cplx p = wp * w - K * w + zeta;
    const cplx dp = static_cast<double>(theta + 1) * wp - K;
    if (dp == 0.0) break;
    const cplx step = p / dp;
    w -= step;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

// Roots of w^{theta+1} - K w + zeta inside the closed sector |arg w| <= pi/theta.
std::vector<cplx> sector_roots(int theta, cplx zeta) {
  std::vector<cplx> c(theta + 2, 0.0);
  c[0] = zeta;
  c[1] = -k_coeff(theta);
  c[theta + 1] = 1.0;
  std::vector<cplx> out;
  const double edge = kPi / theta + 1e-9;
  for (cplx w : polynomial_roots(c)) {
    w = newton_polish(theta, w, zeta);
    if (std::abs(w) == 0.0 || std::abs(std::arg(w)) <= edge) out.push_back(w);
  }
  return out;
}

// The branch root at zeta. side picks the boundary value on the cut zeta >= 1.
cplx branch_w(int theta, cplx zeta, int branch, int side) {
  if (branch != 1 && branch != 2) throw DomainError("i_pre: branch must be 1 or 2");
  const double w0 = w_critical(theta);
  const double az = std::abs(zeta);
  if (branch == 2 && az > 0.0 && std::abs(std::arg(zeta)) > kPi / theta + 1e-12)
    throw DomainError("i_pre: branch 2 is defined only for |arg z| <= pi/theta");
  if (zeta == 0.0 && branch == 2) return 0.0;
  if (zeta == 1.0) return w0;

  const bool on_axis = zeta.imag() == 0.0;
  if (on_axis && zeta.real() < 1.0) {
    // Both candidates real: branch 2 below the critical point, branch 1 above.
    double best = branch == 1 ? -1.0 : 1e300;
    bool found = false;
    for (cplx w : sector_roots(theta, zeta)) {
      if (std::abs(w.imag()) > 1e-7 * std::max(1.0, std::abs(w)) || w.real() < 0.0) continue;
      const double x = w.real();
      if (branch == 1 && x >= w0 && x > best) best = x, found = true;
      if (branch == 2 && x <= w0 && x < best) best = x, found = true;
    }
    if (!found) throw ConvergenceError("i_pre: no real preimage on the requested branch");
    return newton_polish(theta, best, zeta);
  }

  // Off the axis (or on the cut, perturbed to the requested side), classify
  // by the sign rule and then polish at zeta itself.
  cplx zq = zeta;
  double sgn = zeta.imag() > 0.0 ? 1.0 : -1.0;
  if (on_axis) {
    sgn = side >= 0 ? 1.0 : -1.0;
    zq = zeta + cplx(0.0, sgn * 1e-9 * az);
  }
  const cplx* pick = nullptr;
  const auto roots = sector_roots(theta, zq);
  for (const cplx& w : roots) {
    const double s = w.imag() * sgn;
    if ((branch == 2 && s > 0.0) || (branch == 1 && s < 0.0)) {
      if (pick) throw ConsistencyError("i_pre: two roots classified on one branch");
      pick = &w;
    }
  }
  if (!pick) throw ConvergenceError("i_pre: no root on the requested branch");
  return on_axis ? newton_polish(theta, *pick, zeta) : *pick;
}

cplx sigma_of_w(int theta, cplx w) { return -std::pow(w, theta); }

cplx checked_sigma(int theta, cplx zeta, int branch, int side) {
  const cplx w = branch_w(theta, zeta, branch, side);
  const double res = std::abs(j_of_w(theta, w) - zeta);
  if (res > 1e-11 * std::max(1.0, std::abs(zeta)))
    throw ConvergenceError("i_pre: round-trip residual " + std::to_string(res));
  return sigma_of_w(theta, w);
}

// Argument of g_k's inner map: the rotated principal theta-th root of z, with
// z = x on (-inf, 0) taken from the side sign(side).
cplx inner_arg(int theta, cplx z, int k, int side) {
  cplx root;
  if (z.imag() == 0.0 && z.real() < 0.0)
    root = std::pow(-z.real(), 1.0 / theta) * std::polar(1.0, (side >= 0 ? 1.0 : -1.0) * kPi / theta);
  else
    root = std::pow(z, 1.0 / theta);
  if (k >= 1) root *= std::polar(1.0, 2.0 * (k - 1) * kPi / theta);
  return root;
}

cplx g_eval(const PreMapData& d, cplx z, int k, int side) {
  if (k < 0 || k > d.theta) throw DomainError("g_function: k must lie in 0..theta");
  const cplx zeta = inner_arg(d.theta, z, k, side);
  return m_quadratic(d, checked_sigma(d.theta, zeta, k == 0 ? 2 : 1, side));
}

}  // namespace

PreMapData PreMapData::make(int theta) {
  check_theta(theta);
  const double th = theta;
  PreMapData d;
  d.theta = theta;
  d.sigma0 = -std::pow(th, -th / (th + 1.0));
  d.Cg = th * th * th / (2.0 * (th + 1.0) * (th - 1.0) * (th - 1.0));
  return d;
}

cplx j_pre(const PreMapData& d, cplx sigma) {
  if (sigma.imag() == 0.0 && sigma.real() > 0.0)
    throw BranchCutError("j_pre: sigma on the cut (0, inf)");
  if (sigma == 0.0) return 0.0;
  return j_of_w(d.theta, std::pow(-sigma, 1.0 / d.theta));
}

cplx j_pre_derivative(const PreMapData& d, cplx sigma) {
  if (sigma.imag() == 0.0 && sigma.real() >= 0.0)
    throw BranchCutError("j_pre_derivative: sigma on the cut [0, inf)");
  const int th = d.theta;
  const cplx w = std::pow(-sigma, 1.0 / th);
  // sigma = -w^theta, so dw/dsigma = -w^{1-theta} / theta.
  const cplx dJdw = k_coeff(th) - static_cast<double>(th + 1) * std::pow(w, th);
  return -dJdw * std::pow(w, 1 - th) / static_cast<double>(th);
}

cplx i_pre(const PreMapData& d, cplx z, int branch) { return checked_sigma(d.theta, z, branch, +1); }

cplx i_pre_boundary(const PreMapData& d, double x, int branch, int side) {
  return checked_sigma(d.theta, cplx(x, 0.0), branch, side);
}

cplx m_quadratic(const PreMapData& d, cplx s) {
  const double th = d.theta;
  const cplx r = w_critical(d.theta) * s;
  return -d.Cg * (r * r + (2.0 / th) * r + 1.0 / th - 1.0);
}

cplx g_function(const PreMapData& d, cplx z, int k) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if ((k <= 1 && x > 1.0) || (k >= 1 && x < 0.0) || (k == 1 && x == 0.0))
      throw BranchCutError("g_function: z on the cut of g_" + std::to_string(k));
  }
  return g_eval(d, z, k, +1);
}

cplx g_boundary(const PreMapData& d, double x, int k, int side) {
  return g_eval(d, cplx(x, 0.0), k, side);
}

cplx g0_minus_g1(const PreMapData& d, cplx z) {
  // Upper boundary values on (1, inf), as in airy_conformal.
  const int th = d.theta;
  const cplx zeta = z.imag() == 0.0 && z.real() < 0.0 ? inner_arg(th, z, 0, +1) : std::pow(z, 1.0 / th);
  const cplx s2 = checked_sigma(th, zeta, 2, +1);
  const cplx s1 = checked_sigma(th, zeta, 1, +1);
  const double w0 = w_critical(th);
  // M(s2) - M(s1) factored so the critical-point cancellation is exact.
  return -d.Cg * w0 * (s2 - s1) * (w0 * (s2 + s1) + 2.0 / th);
}

double airy_conformal(const PreMapData& d, double z) {
  if (!(std::abs(z - 1.0) <= 0.5)) throw DomainError("airy_conformal: z outside |z - 1| <= 0.5");
  if (z == 1.0) return 0.0;
  const cplx delta = g0_minus_g1(d, z);
  const double mag = std::abs(delta);
  if (z < 1.0) {
    if (delta.real() <= 0.0 || std::abs(delta.imag()) > 1e-10 * mag)
      throw DomainError("airy_conformal: g0 - g1 not positive below 1");
    return std::pow(0.75 * delta.real(), 2.0 / 3.0);
  }
  if (std::abs(delta.real()) > 1e-8 * mag)
    throw DomainError("airy_conformal: g0 - g1 not imaginary above 1");
  return -std::pow(0.75 * mag, 2.0 / 3.0);
}

double airy_conformal_slope_exact(int theta) {
  check_theta(theta);
  const double th = theta;
  return -std::cbrt(2.0) * th / (std::pow(th - 1.0, 2.0 / 3.0) * std::pow(th + 1.0, 5.0 / 3.0));
}

double airy_conformal_slope_numeric(const PreMapData& d) {
  auto central = [&](double h) { return (airy_conformal(d, 1.0 + h) - airy_conformal(d, 1.0 - h)) / (2.0 * h); };
  const double h = 2e-3;
  return (4.0 * central(h) - central(2.0 * h)) / 3.0;
}

TauConstants tau_constants(const PreMapData& d) {
  const double th = d.theta;
  return {th * th / (th * th - 1.0) * std::pow(th, -1.0 / (th + 1.0)),
          std::pow(th - 1.0, 2.0 / 3.0) * std::pow(th + 1.0, 5.0 / 3.0) / (std::cbrt(2.0) * th * th)};
}

double conj_exponent(const PreMapData& d, double x, double tau) {
  if (!(tau > 0.0)) throw DomainError("conj_factor: tau must be positive");
  const double xi = 1.0 - d.theta * tau_constants(d).c2 * std::pow(tau, -4.0 / 3.0) * x;
  if (!(xi > 0.0)) throw DomainError("conj_factor: xi left the interval (0, inf)");
  cplx sum;
  if (xi == 1.0) {
    sum = 2.0 * m_quadratic(d, d.sigma0);
  } else {
    const cplx zeta = std::pow(xi, 1.0 / d.theta);
    sum = m_quadratic(d, checked_sigma(d.theta, zeta, 2, +1)) + m_quadratic(d, checked_sigma(d.theta, zeta, 1, +1));
  }
  return 0.5 * tau * tau * sum.real();
}

double conj_factor(const PreMapData& d, double x, double tau) { return std::exp(conj_exponent(d, x, tau)); }

std::pair<cplx, cplx> g_expansion_coefficients(const PreMapData& d, int k, double phi) {
  if (k < 0 || k > d.theta) throw DomainError("g_expansion_coefficients: k must lie in 0..theta");
  const double th = d.theta;
  const double p = 1.0 / (th + 1.0);
  // Rotation index m in e^{2 m pi i p}, e^{m pi i p}.
  double m;
  const bool upper = phi > 0.0;
  if (k == 0) m = upper ? -1.0 : 1.0;
  else if (k == 1) m = upper ? 1.0 : -1.0;
  else m = 2.0 * k - 1.0;
  const cplx lead = -d.Cg * std::polar(1.0, 2.0 * m * kPi * p) * std::pow(th, -2.0 * p);
  const cplx sub = d.Cg * (2.0 / th) * (th - 1.0) * std::polar(1.0, m * kPi * p) * std::pow(th, -p);
  return {lead, sub};
}

}  // namespace edgetrans
