#pragma once
#include <array>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace edgetrans {

// State of the theta = 2 Lax-pair system at one tau.
struct ChazyState {
  double tau = 0.0;
  double c = 0.0, b = 0.0, f = 0.0, a = 0.0, k = 0.0, d = 0.0;
  double alpha = 0.0;
  double gamma = 1.0 / 36.0;
};

// 1/36 + alpha/12 - alpha^2/12.
double gamma_const(double alpha);

// b, f, a, k from (c, c', c'') and d from the spectral constraint; the three
// constraints hold to rounding for any (c, c', c'').
ChazyState complete_from_c(double c, double cp, double cpp, double tau, double alpha);

// As complete_from_c, with c'' chosen so that det A_{-1} also matches the
// prescribed spectrum. det A_{-1} is quadratic in c'' with leading coefficient
// 1/16; `root` 0 takes the smaller solution, 1 the larger. From random
// (c, c') in [-1, 1]^2 at tau = 0 the smaller root often runs into a pole
// before tau = 1, hence the default. Throws DomainError when (c, c') admits
// no real c''.
ChazyState complete_on_spectral_level(double c, double cp, double tau, double alpha, int root = 1);

// Residuals of the three constraint relations.
std::array<double, 3> constraint_residuals(const ChazyState& s);

// d/dtau of (c, b, f, a, k, d). The system is printed with x'/sqrt(2) on the
// left, so every field is sqrt(2) times that right-hand side.
struct ChazyRates {
  double c, b, f, a, k, d;
};
ChazyRates ode_rhs(const ChazyState& s);

// Taylor coefficients of (c, b, f, a, k, d) about s.tau, orders 0..order,
// from the polynomial vector field (no numerical differentiation).
struct ChazyJet {
  double tau;
  std::array<std::vector<double>, 6> coeffs;  // c, b, f, a, k, d
};
ChazyJet chazy_jet(const ChazyState& s, int order);
// c^{(j)}(tau) for j = 0..order.
std::vector<double> c_derivatives(const ChazyState& s, int order);
// The state advanced by h along the flow using Taylor hops sized from the jet.
ChazyState taylor_advance(const ChazyState& s, double h);

using Mat3 = std::array<std::array<std::complex<double>, 3>, 3>;

std::array<std::array<double, 3>, 3> a_minus1(const ChazyState& s);
// -(alpha^3/108 + alpha^2/72 - alpha/24).
double det_target(double alpha);
double det_a_minus1(const ChazyState& s);
// Eigenvalues of A_{-1}, from its characteristic polynomial.
std::vector<std::complex<double>> a_minus1_eigenvalues(const ChazyState& s);
// {1/2 - alpha/3, alpha/6, 1/2 + alpha/6}.
std::array<double, 3> spectrum_target(double alpha);
// Max distance between the eigenvalues and the target set after sorting both
// lexicographically by (real, imag).
double spectrum_error(const ChazyState& s);

struct LaxPairEval {
  std::complex<double> xi;
  Mat3 A, B;
};
// A = D(2^{-3/2} A0 + A_{-1}/xi) D^{-1}, B = D(xi B1 / 2 + sqrt(2) B0) D^{-1},
// D = diag(1, sqrt 2, 2). Throws DomainError for xi == 0.
LaxPairEval lax_pair(const ChazyState& s, std::complex<double> xi);
// max |dA/dtau - dB/dxi + AB - BA| with dA/dtau from ode_rhs.
double zero_curvature_residual(const ChazyState& s, std::complex<double> xi);

// Scalar residuals at one state. The Chazy-I residual is reported at
// tau_y = sqrt(2) s.tau and the Boussinesq residual at tau_v = 2 s.tau / 3^{1/4},
// the arguments whose inner state is s.
double residual_third_order(const ChazyState& s);
double residual_chazy1(const ChazyState& s);
double residual_chazy_u(const ChazyState& s);
double residual_boussinesq(const ChazyState& s);

struct StepControl {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double initial_step = 1e-3;
  // Blow-up is declared when max |field| exceeds this or the step falls
  // below min_step (1 + |tau|).
  double blowup = 1e8;
  double min_step = 1e-12;
  // When false, integrate stops at a detected pole and records it instead of
  // throwing PoleError.
  bool throw_on_pole = true;
};

struct ChazyTrajectory {
  std::vector<ChazyState> states;  // accepted steps, monotone in tau
  double pole_tau = std::numeric_limits<double>::quiet_NaN();  // estimate, NaN when none
  bool hit_pole() const { return pole_tau == pole_tau; }
  double tau_begin() const { return states.front().tau; }
  double tau_end() const { return states.back().tau; }
  // Dense output: Taylor hops from the nearest stored state. Throws
  // DomainError outside [tau_begin, tau_end].
  ChazyState at(double tau) const;
  // tau, c, b, f, a, k, d, the three constraint residuals and the third-order
  // and second-degree residuals at each stored state (the other two scalar
  // equations live at rescaled arguments).
  std::string to_csv() const;
};

// Adaptive Runge-Kutta-Fehlberg 7(8) from s0 to tau_end (either direction).
// Near a movable pole c ~ 1/(sqrt(2)(tau - tau0)); the estimate reported is
// tau + c/c' at the last accepted state.
ChazyTrajectory integrate(const ChazyState& s0, double tau_end, const StepControl& ctl = {});

// Trajectory-level residuals: the state at the inner argument (tau/sqrt 2 for
// Chazy-I, 3^{1/4} tau / 2 for Boussinesq) is taken from dense output.
double residual_third_order(const ChazyTrajectory& tr, double tau);
double residual_chazy1(const ChazyTrajectory& tr, double tau);
double residual_chazy_u(const ChazyTrajectory& tr, double tau);
double residual_boussinesq(const ChazyTrajectory& tr, double tau);
// Largest constraint residual over the stored states.
double max_constraint_drift(const ChazyTrajectory& tr);

}  // namespace edgetrans
