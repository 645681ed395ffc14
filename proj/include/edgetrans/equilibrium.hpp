#pragma once
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace edgetrans {

using cplx = std::complex<double>;

// V(x) = sum_k coeffs[k-1] x^k, scaled as V_t = V / t.
struct Potential {
  int theta = 2;
  double alpha = 0.0;
  std::vector<double> coeffs;  // v_1 .. v_d
  double t = 1.0;

  void validate() const;
  int degree() const { return static_cast<int>(coeffs.size()); }
  cplx V(cplx z) const;
  cplx dV(cplx z) const;
  cplx d2V(cplx z) const;
  double Vt(double x) const { return V(x).real() / t; }
  // The same V with t replaced.
  Potential with_t(double new_t) const;
};

// Quadratic family V = x^2 + rho x used throughout the transition experiments.
Potential quadratic_potential(int theta, double alpha, double rho, double t = 1.0);

// Circle standing in for the contour enclosing the preimage curve. Any circle
// around [-1, 0] gives the same integrals.
struct ContourSpec {
  cplx center;
  double radius = 0.0;
  int nodes = 256;

  static ContourSpec default_for(int theta);
  void validate(int theta) const;
};

// (u s + v) ((s + 1)/s)^{1/theta}, principal branch. Throws BranchCutError on [-1, 0].
cplx j_map(int theta, double u, double v, cplx s);
// dJ/ds
cplx j_map_derivative(int theta, double u, double v, cplx s);

// (1/2 pi i) contour integrals of U(J_{u,v}(s)) against 1/(s+1), 1/s and
// 1/(s+1)^{m+1}, with U(z) = z V'(z) of the unscaled V. Each is computed at
// C.nodes and 2 C.nodes; a difference above 1e-10 (relative to max(1, |value|))
// or an imaginary part above that tolerance throws ConvergenceError.
double contour_E(double u, double v, const Potential& P, const ContourSpec& C);
double contour_F(double u, double v, const Potential& P, const ContourSpec& C);
double contour_moment(double u, double v, const Potential& P, const ContourSpec& C, int m);

// The measure-level data shared by both regimes: J_{u,v}, the polynomial
// N_In(s) = sum_k n_in[k] (s+1)^k - 1 (exact, since U(J) has only a polynomial
// part at infinity), and the support [a, b] with preimages s_a, s_b.
struct EquilibriumMeasure {
  int theta = 2;
  double u = 0.0, v = 0.0, t = 1.0;
  std::vector<double> n_in;
  double a = 0.0, b = 0.0;
  double s_a = -1.0, s_b = 0.5;

  cplx N(cplx s) const;
  cplx N_w(cplx w) const;  // N as a function of w = s + 1
  cplx dN(cplx s) const;
};

struct HardEdgeEquilibrium {
  int theta = 2;
  double t = 1.0;
  double c = 0.0, b = 0.0;
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double d1 = 0.0, rho = 0.0;
  double ell = 0.0;
  double m1 = 0.0;     // N'_In(-1); zero exactly in the transition regime
  double dc_dt = 0.0;  // c / (1 + A3), the slope of c(t) along the hard-edge curve
  bool negative_density = false;  // density dips below zero near 0 (t < 1 off criticality)
  EquilibriumMeasure measure;
};

struct SoftEdgeEquilibrium {
  int theta = 2;
  double t = 1.0;
  double c1 = 0.0, c0 = 0.0;
  double s_a = 0.0, s_b = 0.0;
  double a_hat = 0.0, b_hat = 0.0;
  double ell_hat = 0.0;
  double d2_hat = 0.0;        // fitted from the density near b_hat
  double d2_hat_exact = 0.0;  // N'_In(s_b) sqrt(2/J''(s_b)) / (pi b_hat)
  double t_critical = 0.0;    // t at which V/t is transition-critical
  EquilibriumMeasure measure;
};

struct A2A3 {
  double A2, A3;
  double relation_residual;  // A3 + 1 - (theta+1)/theta A2, zero only at criticality
  double identity_residual;  // A3 + E - (theta+1)/theta A2 - m1/theta, zero always
};

// Contour integrals of J^2 V''(J)/(s+1)^2 and /(s+1) for V_t. Throws
// ConsistencyError if the integration-by-parts identity fails beyond 1e-9.
A2A3 compute_A2_A3(double c, const Potential& P, const ContourSpec& C);

// Hard-edge curve u = v = c with E(c, c) = t, taking the largest positive
// root (the branch continuing to t -> infinity). Fills A1..A3, d1, rho, m1, ell.
HardEdgeEquilibrium solve_C1(const Potential& P, const ContourSpec& C, bool with_ell = true);

// Transition scale: largest positive root c* of N'_In(-1) on the hard-edge
// curve and t_c = E(c*, c*). Returns {0, 0} if V never becomes critical.
std::pair<double, double> transition_point(const Potential& P, const ContourSpec& C);

// Soft-edge curve: continue (c1, c0) from (c*, c*) at t_c down to P.t < t_c.
SoftEdgeEquilibrium solve_C2(const Potential& P, const ContourSpec& C, bool with_ell = true);

enum class Regime { hard, transition, soft };
// Hard if t > t_c, transition if |t - t_c| <= 1e-12 t_c, soft otherwise.
Regime classify(const Potential& P, const ContourSpec& C);

// Newton residual |(E - t, F - (1+theta) t)| at (u, v) for V.
double equation_residual(double u, double v, const Potential& P, const ContourSpec& C);
// H(u, v) = (1 + 1/theta) E - F/theta.
double contour_H(double u, double v, const Potential& P, const ContourSpec& C);

// Inverses of J_{u,v}: s1 outside the preimage curve, s2 inside. Each root of
// (u s + v)^theta (s + 1) - z^theta s with J(s) = z on the principal branch is
// classified by the sign of Im s against Im z (same sign for s1). For real z
// the caller gets the boundary values from the upper half plane.
struct InverseMaps {
  cplx s1, s2;
};
InverseMaps inverse_maps(const EquilibriumMeasure& m, cplx z);

// Preimage of x in the support on the upper arc of the preimage curve.
cplx preimage_upper(const EquilibriumMeasure& m, double x);

// psi(x) = Im N_In(I_+(x)) / (pi x), zero outside the support.
double density_psi(const EquilibriumMeasure& m, double x);
double density_psi(const HardEdgeEquilibrium& eq, double x);
double density_psi(const SoftEdgeEquilibrium& eq, double x);

// Total mass by tanh-sinh quadrature of psi over [a, b].
double total_mass(const EquilibriumMeasure& m);
// Total mass from N_In at -1, 0 and -v/u (the residue form).
double total_mass_formula(const EquilibriumMeasure& m);

struct LogPotentials {
  double ell;
  double ell_spread;  // max - min of the Euler-Lagrange constant over 0.2b..0.8b
  std::function<double(double)> g;       // int log|x - y| psi(y) dy
  std::function<double(double)> gtilde;  // int log|x^theta - y^theta| psi(y) dy
};
// Throws ConsistencyError if ell_spread > 1e-7.
LogPotentials g_and_ell(const EquilibriumMeasure& m, const Potential& P);

struct EdgeFit {
  double d2;         // density ~ d2 (b - x)^{1/2}
  double exponent;   // free log-log slope
  double r_squared;  // of the free fit
};
// Regression of psi near the right endpoint over b - x in [1e-7, 1e-4] (b - a).
// Throws ConsistencyError if R^2 < 0.999.
EdgeFit fit_right_edge(const EquilibriumMeasure& m);

// Log-log slope of psi on a geometric grid x in [lo, hi].
double loglog_slope(const std::function<double(double)>& f, double lo, double hi, int points = 25);

std::string to_json(const HardEdgeEquilibrium& eq);
std::string to_json(const SoftEdgeEquilibrium& eq);

}  // namespace edgetrans
