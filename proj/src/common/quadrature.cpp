#include "edgetrans/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "edgetrans/errors.hpp"

namespace edgetrans {

namespace {

QuadratureRule build_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Eigenvalues of the symmetric tridiagonal (diag d, off-diagonal e[1..n-1])
// by implicit QL, tracking only the first component of each eigenvector.
void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>& first) {
  const int n = static_cast<int>(d.size());
  first.assign(n, 0.0);
  first[0] = 1.0;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-17 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw ConvergenceError("gauss_jacobi: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = first[i + 1];
          first[i + 1] = s * first[i] + c * f;
          first[i] = c * first[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

QuadratureRule build_gauss_jacobi_unit(int n, double alpha) {
  // Monic recurrence for u^alpha on [0, 1], i.e. Jacobi (0, alpha) mapped
  // from [-1, 1] by u = (1 + x) / 2.
  const double b = alpha;
  std::vector<double> diag(n), off(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + b;
    const double a_k = k == 0 ? b / (b + 2.0) : (b * b) / (s * (s + 2.0));
    diag[k] = 0.5 * (1.0 + a_k);
    if (k >= 1) {
      const double kk = k;
      const double beta = 4.0 * kk * kk * (kk + b) * (kk + b) / (s * s * (s + 1.0) * (s - 1.0));
      off[k] = 0.5 * std::sqrt(beta);
    }
  }
  std::vector<double> first;
  tridiagonal_eigen(diag, off, first);
  const double mu0 = 1.0 / (alpha + 1.0);
  QuadratureRule rule;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });
  for (int i : order) {
    rule.nodes.push_back(diag[i]);
    rule.weights.push_back(mu0 * first[i] * first[i]);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_jacobi_unit(int n, double alpha) {
  if (n < 1) throw DomainError("gauss_jacobi_unit: n must be >= 1");
  if (!(alpha > -1.0)) throw DomainError("gauss_jacobi_unit: alpha must exceed -1");
  static std::mutex mu;
  static std::map<std::pair<int, double>, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(n, alpha);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_gauss_jacobi_unit(n, alpha)).first;
  return it->second;
}

const QuadratureRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_legendre(n)).first;
  return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

}  // namespace edgetrans
