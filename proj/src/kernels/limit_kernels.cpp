#include <cmath>
#include <string>

#include "edgetrans/errors.hpp"
#include "edgetrans/kernels.hpp"
#include "edgetrans/quadrature.hpp"

namespace edgetrans {

namespace {

constexpr int kMeijerNodes = 64;
constexpr double kAiryCutoff = 40.0;

double gamma_real(double x) { return complex_gamma(cplx(x, 0.0)).real(); }

// 64- and 128-node Gauss-Jacobi results; abs_scale receives the 128-node
// integral of |integrand| for the relative tolerance.
MeijerKernelValue meijer_quadrature(const LimitKernelSpec& s, double x, double y, double& abs_scale) {
  s.validate();
  if (x < 0.0 || y < 0.0) throw DomainError("kernel_meijer: x and y must be >= 0");
  abs_scale = 0.0;
  if (x == 0.0) {
    if (s.alpha < 0.0) throw PoleError("kernel_meijer: x^alpha is singular at x = 0 for alpha < 0");
    if (s.alpha > 0.0) return {0.0, 0.0};
  }
  const double pref = static_cast<double>(s.theta) * s.theta * (x == 0.0 ? 1.0 : std::pow(x, s.alpha));
  auto rule_sum = [&](int n, double& abs_sum) {
    const auto& r = gauss_jacobi_unit(n, s.alpha);
    double sum = 0.0;
    abs_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = r.nodes[i];
      const double f = phi_mei(s, u * x) * phitilde_mei(s, u * y);
      sum += r.weights[i] * f;
      abs_sum += r.weights[i] * std::abs(f);
    }
    return pref * sum;
  };
  double unused = 0.0;
  const double k64 = rule_sum(kMeijerNodes, unused);
  const double k128 = rule_sum(2 * kMeijerNodes, abs_scale);
  abs_scale *= std::abs(pref);
  return {k128, std::abs(k128 - k64)};
}

}  // namespace

void LimitKernelSpec::validate() const {
  if (theta < 1) throw DomainError("LimitKernelSpec: theta must be a positive integer");
  if (!(alpha > -1.0)) throw DomainError("LimitKernelSpec: alpha must exceed -1");
}

double phi_mei(const LimitKernelSpec& s, double x) {
  s.validate();
  if (x < 0.0) throw DomainError("phi_mei: x must be >= 0");
  const int th = s.theta;
  if (x == 0.0) {
    // Leading residue at the smallest numerator parameter (alpha-theta+1)/theta;
    // its power cancels the prefactor exactly.
    double num = 1.0;
    for (int h = 1; h < th; ++h) num *= gamma_real(static_cast<double>(h) / th);
    return num / gamma_real((s.alpha + 1.0) / th);
  }
  const auto p = meijer_params_gtheta0(th, s.alpha);
  return std::pow(x, th - s.alpha - 1.0) * meijer_g_theta0(std::pow(x, th), p);
}

double phitilde_mei(const LimitKernelSpec& s, double y) {
  s.validate();
  if (y < 0.0) throw DomainError("phitilde_mei: y must be >= 0");
  const auto p = meijer_params_g10(s.theta, s.alpha);
  return meijer_g10(std::pow(y, s.theta), p);
}

MeijerKernelValue kernel_meijer_detail(const LimitKernelSpec& s, double x, double y) {
  double scale = 0.0;
  return meijer_quadrature(s, x, y, scale);
}

double kernel_meijer(const LimitKernelSpec& s, double x, double y) {
  double scale = 0.0;
  const auto r = meijer_quadrature(s, x, y, scale);
  if (r.error_estimate > 1e-8 * std::max(std::abs(r.value), scale))
    throw ConvergenceError("kernel_meijer: node-doubling estimate " + std::to_string(r.error_estimate) +
                           " above 1e-8 relative");
  return r.value;
}

double kernel_airy_diagonal(double x) {
  const auto a = airy(x);
  return a.aip * a.aip - x * a.ai * a.ai;
}

double kernel_airy_cd(double x, double y) {
  if (x == y) throw DomainError("kernel_airy_cd: x == y (use the diagonal form)");
  const auto ax = airy(x), ay = airy(y);
  return (ax.ai * ay.aip - ax.aip * ay.ai) / (x - y);
}

double kernel_airy_integral(double x, double y) {
  if (x < -kAiryCutoff || y < -kAiryCutoff) throw DomainError("kernel_airy_integral: arguments below -40");
  const auto& r = gauss_legendre(24);
  double sum = 0.0;
  for (int panel = 0; panel < static_cast<int>(kAiryCutoff); ++panel) {
    const double mid = panel + 0.5;
    double part = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double u = mid + 0.5 * r.nodes[i];
      part += r.weights[i] * airy(x + u).ai * airy(y + u).ai;
    }
    sum += 0.5 * part;
  }
  return sum;
}

double kernel_airy(double x, double y) {
  if (x == y) return kernel_airy_diagonal(x);
  if (std::abs(x - y) > 1e-4) return kernel_airy_cd(x, y);
  return kernel_airy_integral(x, y);
}

double kernel_tau_limits(const LimitKernelSpec& s, double tau, double xi, double eta) {
  s.validate();
  const double th = s.theta;
  if (s.kind == LimitKind::meijer) {
    if (!(tau < 0.0)) throw DomainError("kernel_tau_limits: the Meijer limit needs tau < 0");
    const double scale = std::pow(-tau, (th + 1.0) / th);
    return scale * kernel_meijer(s, scale * xi, scale * eta);
  }
  if (!(tau > 0.0)) throw DomainError("kernel_tau_limits: the Airy limit needs tau > 0");
  const auto d = PreMapData::make(s.theta);
  const auto c = tau_constants(d);
  const double big = std::pow(c.c1 * tau, (th + 1.0) / th);
  const double shrink = c.c2 * std::pow(tau, -4.0 / 3.0);
  const double x = (1.0 - xi / big) / shrink;
  const double y = (1.0 - eta / big) / shrink;
  const double log_ratio = conj_exponent(d, y, tau) - conj_exponent(d, x, tau);
  return kernel_airy(x, y) * std::exp(log_ratio) / (big * shrink);
}

}  // namespace edgetrans
