#include "edgetrans/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgetrans/errors.hpp"

namespace edgetrans {

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

namespace {

// p(z) and p'(z) together.
void eval_with_derivative(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = 0.0;
  dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs_in) {
  std::vector<cplx> c = coeffs_in;
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  // Exact zero roots first, then rescale z = scale * w so the product of the
  // remaining roots has unit modulus; roots far below 1 are otherwise lost.
  std::size_t zeros = 0;
  while (zeros + 1 < c.size() && c[zeros] == 0.0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return std::vector<cplx>(zeros, 0.0);
  const double scale = std::pow(std::abs(c[0]) / std::abs(c[deg]), 1.0 / deg);
  {
    double pw = 1.0;
    for (int k = 0; k <= deg; ++k, pw *= scale) c[k] *= pw;
    const cplx lead = c[deg];
    for (auto& v : c) v /= lead;
  }

  // Initial guesses on a circle of the Cauchy radius, rotated off the axes.
  double radius = 0.0;
  for (int k = 0; k < deg; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / (deg - k)));
  radius = std::max(radius, 1e-3);
  std::vector<cplx> z(deg);
  for (int k = 0; k < deg; ++k)
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.25) / deg + 0.4);

  bool converged = false;
  for (int iter = 0; iter < 500 && !converged; ++iter) {
    converged = true;
    for (int i = 0; i < deg; ++i) {
      cplx p, dp;
      eval_with_derivative(c, z[i], p, dp);
      if (p == 0.0) continue;
      const cplx ratio = p / dp;
      cplx sum = 0.0;
      for (int j = 0; j < deg; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx step = ratio / (1.0 - ratio * sum);
      z[i] -= step;
      if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[i]))) converged = false;
    }
  }
  if (!converged) {
    // Aberth can creep on clustered roots; accept if residuals are tiny anyway.
    for (auto& root : z) {
      cplx p, dp;
      eval_with_derivative(c, root, p, dp);
      double size = 0.0;
      double pw = 1.0;
      for (int k = 0; k <= deg; ++k, pw *= std::abs(root)) size += std::abs(c[k]) * pw;
      if (std::abs(p) > 1e-10 * size) throw ConvergenceError("polynomial_roots: Aberth iteration stalled");
    }
  }
  for (auto& root : z) {
    for (int k = 0; k < 3; ++k) {
      cplx p, dp;
      eval_with_derivative(c, root, p, dp);
      if (dp == 0.0) break;
      const cplx step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 1e-6 * std::max(1.0, std::abs(root))) break;  // near a double root
      root -= step;
    }
  }
  for (auto& v : z) v *= scale;
  z.insert(z.end(), zeros, 0.0);
  return z;
}

}  // namespace edgetrans
