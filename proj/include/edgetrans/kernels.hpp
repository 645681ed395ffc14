#pragma once
#include <functional>
#include <vector>

#include "edgetrans/biorth.hpp"
#include "edgetrans/limitmaps.hpp"
#include "edgetrans/specialfn.hpp"

namespace edgetrans {

enum class LimitKind { meijer, airy };

struct LimitKernelSpec {
  int theta = 2;
  double alpha = 0.0;
  LimitKind kind = LimitKind::meijer;

  void validate() const;
};

// x^{theta-alpha-1} G^{theta,0}_{0,theta+1}(x^theta | (alpha-theta+1)/theta, ..., alpha/theta, 0).
// Finite and nonzero at 0, where the closed-form limit is returned.
double phi_mei(const LimitKernelSpec& s, double x);
// G^{1,0}_{0,theta+1}(y^theta | 0, -alpha/theta, (1-alpha)/theta, ..., (theta-1-alpha)/theta).
double phitilde_mei(const LimitKernelSpec& s, double y);

struct MeijerKernelValue {
  double value;           // 128-node result
  double error_estimate;  // |64-node - 128-node|
};
// theta^2 int_0^1 (ux)^alpha phi(ux) phitilde(uy) du. The integrand is u^alpha
// times a function analytic in u, so the rule is Gauss-Jacobi with weight u^alpha.
MeijerKernelValue kernel_meijer_detail(const LimitKernelSpec& s, double x, double y);
// Throws ConvergenceError if the node-doubling estimate exceeds
// 1e-8 max(|K|, int |integrand|).
double kernel_meijer(const LimitKernelSpec& s, double x, double y);

// Christoffel-Darboux form for |x - y| > 1e-4, otherwise the integral form
// (or the closed-form diagonal Ai'(x)^2 - x Ai(x)^2 when x == y).
double kernel_airy(double x, double y);
// (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y); throws DomainError when x == y.
double kernel_airy_cd(double x, double y);
// int_0^40 Ai(x+u)Ai(y+u) du by composite Gauss-Legendre; the tail beyond 40
// is below 1e-100 for x, y >= -40.
double kernel_airy_integral(double x, double y);
double kernel_airy_diagonal(double x);

// Approximation of K^(tau)(xi, eta) from the limit kernels. meijer needs
// tau < 0: (-tau)^{(theta+1)/theta} K^Mei((-tau)^{(theta+1)/theta} xi, ...).
// airy needs tau > 0: xi = (c1 tau)^{(theta+1)/theta}(1 - c2 tau^{-4/3} x)
// is inverted for x, and K^Ai(x, y) f(y; tau)/f(x; tau) is divided by the
// Jacobian (c1 tau)^{(theta+1)/theta} c2 tau^{-4/3}.
double kernel_tau_limits(const LimitKernelSpec& s, double tau, double xi, double eta);

enum class Schedule { serial, parallel };

// Fills values[i][k] = f(xs[i], ys[k]). The parallel schedule uses OpenMP over
// grid rows; f must be safe to call concurrently.
std::vector<std::vector<double>> fill_values(const std::function<double(double, double)>& f,
                                             const std::vector<double>& xs, const std::vector<double>& ys,
                                             Schedule sched);

KernelGrid meijer_grid(const LimitKernelSpec& s, const std::vector<double>& xs, const std::vector<double>& ys,
                       Schedule sched);
KernelGrid airy_grid(const std::vector<double>& xs, const std::vector<double>& ys, Schedule sched);

// Finite-n kernel on a grid. The p and q values are computed once per grid
// point in working precision and then combined, so the cost is O(n^2 (|xs| +
// |ys|) + n |xs| |ys|) multiprecision operations.
KernelGrid finite_grid(const BiorthFamily& F, const MomentTable& T, const std::vector<double>& xs,
                       const std::vector<double>& ys, Schedule sched);
// s K_n(s x, s y) with s = (rho n)^{-(theta+1)/(2 theta)}.
KernelGrid origin_grid(const BiorthFamily& F, const MomentTable& T, const HardEdgeEquilibrium& eq,
                       const std::vector<double>& xs, const std::vector<double>& ys, Schedule sched);
// c_n K_n(b_hat + c_n u, b_hat + c_n v).
KernelGrid soft_grid(const BiorthFamily& F, const MomentTable& T, const SoftEdgeEquilibrium& seq,
                     const std::vector<double>& us, const std::vector<double>& vs, Schedule sched);

// sgn(K(u, v)) sqrt(K(u, v) K(v, u)): invariant under the conjugation
// K -> h(u) K / h(v), so finite-n kernels can be compared with symmetric limits
// without fixing the gauge. Zero when the two entries differ in sign.
std::vector<std::vector<double>> gauge_invariant(const KernelGrid& g);

}  // namespace edgetrans
