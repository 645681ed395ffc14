#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "internal.hpp"

namespace edgetrans {

void Potential::validate() const {
  if (theta < 2) throw DomainError("Potential: theta must be an integer >= 2");
  if (!(alpha > -1.0)) throw DomainError("Potential: alpha must be > -1");
  if (coeffs.empty()) throw DomainError("Potential: at least one coefficient is required");
  if (!(coeffs.back() > 0.0)) throw DomainError("Potential: leading coefficient must be positive");
  if (!(t > 0.0)) throw DomainError("Potential: t must be positive");
}

cplx Potential::V(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * z;
  return acc;
}

cplx Potential::dV(cplx z) const {
  cplx acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k - 1];
  return acc;
}

cplx Potential::d2V(cplx z) const {
  cplx acc = 0.0;
  for (int k = degree(); k >= 2; --k) acc = acc * z + static_cast<double>(k * (k - 1)) * coeffs[k - 1];
  return acc;
}

Potential Potential::with_t(double new_t) const {
  Potential p = *this;
  p.t = new_t;
  return p;
}

Potential quadratic_potential(int theta, double alpha, double rho, double t) {
  Potential p{theta, alpha, {rho, 1.0}, t};
  p.validate();
  return p;
}

ContourSpec ContourSpec::default_for(int theta) {
  const double th = theta;
  return {cplx((-1.0 + 1.0 / th) / 2.0, 0.0), 0.65 * (1.0 + 1.0 / th) * 1.3, 256};
}

void ContourSpec::validate(int theta) const {
  if (!(radius > 0.0)) throw DomainError("ContourSpec: radius must be positive");
  if (nodes < 64 || nodes % 2) throw DomainError("ContourSpec: nodes must be even and >= 64");
  if (std::abs(center + 1.0) >= radius || std::abs(center - 1.0 / theta) >= radius)
    throw DomainError("ContourSpec: circle must enclose [-1, 1/theta]");
}

cplx j_map(int theta, double u, double v, cplx s) {
  if (s.imag() == 0.0 && s.real() >= -1.0 && s.real() <= 0.0)
    throw BranchCutError("j_map: s lies on the branch cut [-1, 0]");
  return (u * s + v) * std::pow((s + 1.0) / s, 1.0 / theta);
}

cplx j_map_derivative(int theta, double u, double v, cplx s) {
  const cplx J = j_map(theta, u, v, s);
  return J * (u / (u * s + v) + (1.0 / (s + 1.0) - 1.0 / s) / static_cast<double>(theta));
}

namespace detail {

cplx j_map_w(int theta, double u, double v, cplx w) {
  return (u * w + (v - u)) * std::pow(w / (w - 1.0), 1.0 / theta);
}

std::vector<double> contour_integrals(const ContourSpec& C, int count,
                                      const std::function<void(cplx, cplx*)>& f, const char* what) {
  const int n2 = 2 * C.nodes;
  std::vector<cplx> coarse(count, 0.0), fine(count, 0.0), buf(count);
  std::vector<double> scale(count, 0.0);
  for (int k = 0; k < n2; ++k) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * k / n2);
    f(C.center + C.radius * e, buf.data());
    for (int i = 0; i < count; ++i) {
      const cplx term = buf[i] * C.radius * e;
      fine[i] += term;
      if (k % 2 == 0) coarse[i] += term;
      scale[i] += std::abs(term);
    }
  }
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    fine[i] /= static_cast<double>(n2);
    coarse[i] /= static_cast<double>(C.nodes);
    const double tol = 1e-10 * std::max(1.0, scale[i] / n2);
    if (std::abs(fine[i] - coarse[i]) > tol)
      throw ConvergenceError(std::string(what) + ": contour quadrature not converged under node doubling");
    if (std::abs(fine[i].imag()) > tol)
      throw ConvergenceError(std::string(what) + ": contour integral has a non-negligible imaginary part");
    out[i] = fine[i].real();
  }
  return out;
}

double contour_integral(const ContourSpec& C, const std::function<cplx(cplx)>& f, const char* what) {
  return contour_integrals(C, 1, [&](cplx s, cplx* out) { out[0] = f(s); }, what)[0];
}

std::vector<double> monomial_moments(int theta, int kmax, int p, const ContourSpec& C) {
  return contour_integrals(
      C, kmax + 1,
      [&](cplx s, cplx* out) {
        const cplx J = j_map(theta, 1.0, 1.0, s);
        const cplx g = std::pow(s + 1.0, -p);
        cplx pw = 1.0;
        for (int k = 0; k <= kmax; ++k, pw *= J) out[k] = pw * g;
      },
      "monomial_moments");
}

std::vector<double> n_in_coefficients(double u, double v, const Potential& P, const ContourSpec& C) {
  const int d = P.degree();
  auto m = contour_integrals(
      C, d + 1,
      [&](cplx s, cplx* out) {
        const cplx J = j_map(P.theta, u, v, s);
        const cplx U = J * P.dV(J);
        cplx g = 1.0 / (s + 1.0);
        for (int k = 0; k <= d; ++k, g /= (s + 1.0)) out[k] = U * g;
      },
      "n_in_coefficients");
  for (auto& x : m) x /= P.t;
  return m;
}

}  // namespace detail

double contour_E(double u, double v, const Potential& P, const ContourSpec& C) {
  return detail::contour_integral(
      C, [&](cplx s) { const cplx J = j_map(P.theta, u, v, s); return J * P.dV(J) / (s + 1.0); },
      "contour_E");
}

double contour_F(double u, double v, const Potential& P, const ContourSpec& C) {
  return detail::contour_integral(
      C, [&](cplx s) { const cplx J = j_map(P.theta, u, v, s); return J * P.dV(J) / s; }, "contour_F");
}

double contour_moment(double u, double v, const Potential& P, const ContourSpec& C, int m) {
  if (m < 1) throw DomainError("contour_moment: m must be >= 1");
  return detail::contour_integral(
      C,
      [&](cplx s) {
        const cplx J = j_map(P.theta, u, v, s);
        return J * P.dV(J) / std::pow(s + 1.0, m + 1);
      },
      "contour_moment");
}

double contour_H(double u, double v, const Potential& P, const ContourSpec& C) {
  const double th = P.theta;
  return (1.0 + 1.0 / th) * contour_E(u, v, P, C) - contour_F(u, v, P, C) / th;
}

double equation_residual(double u, double v, const Potential& P, const ContourSpec& C) {
  const double e = contour_E(u, v, P, C) - P.t;
  const double f = contour_F(u, v, P, C) - (1.0 + P.theta) * P.t;
  return std::hypot(e, f);
}

cplx EquilibriumMeasure::N_w(cplx w) const {
  cplx acc = 0.0;
  for (auto it = n_in.rbegin(); it != n_in.rend(); ++it) acc = acc * w + *it;
  return acc - 1.0;
}

cplx EquilibriumMeasure::N(cplx s) const { return N_w(s + 1.0); }

cplx EquilibriumMeasure::dN(cplx s) const {
  const cplx w = s + 1.0;
  cplx acc = 0.0;
  for (int k = static_cast<int>(n_in.size()) - 1; k >= 1; --k) acc = acc * w + static_cast<double>(k) * n_in[k];
  return acc;
}

}  // namespace edgetrans
