#pragma once
#include <functional>
#include <vector>

namespace edgetrans {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; nodes by Newton on P_n from Chebyshev seeds.
// Rules are computed once per n and cached (thread-safe).
const QuadratureRule& gauss_legendre(int n);

// Gauss-Jacobi rule on [0, 1] for the weight u^alpha (alpha > -1), by
// Golub-Welsch on the shifted Jacobi matrix. Cached per (n, alpha).
const QuadratureRule& gauss_jacobi_unit(int n, double alpha);

// Integral of f over [a, b] with an n-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace edgetrans
