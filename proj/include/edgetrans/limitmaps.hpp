#pragma once
#include <complex>
#include <utility>

namespace edgetrans {

using cplx = std::complex<double>;

struct PreMapData {
  int theta = 2;
  double sigma0 = 0.0;  // -theta^{-theta/(theta+1)}, the critical point of the map
  double Cg = 0.0;      // theta^3 / (2 (theta+1) (theta-1)^2)

  static PreMapData make(int theta);
};

// -(-sigma)^{(theta+1)/theta} + (theta+1) theta^{-theta/(theta+1)} (-sigma)^{1/theta},
// principal branches. Throws BranchCutError for sigma in [0, inf) other than 0.
cplx j_pre(const PreMapData& d, cplx sigma);
cplx j_pre_derivative(const PreMapData& d, cplx sigma);

// Inverse branches. Branch 1 maps C \ [1, inf) onto the exterior of the
// critical curve through sigma0; branch 2 maps the sector |arg z| < pi/theta
// minus [1, inf) into the region between that curve and (0, inf).
// With w = (-sigma)^{1/theta} the map is the polynomial K w - w^{theta+1}, so
// both branches are roots of w^{theta+1} - K w + z in |arg w| < pi/theta;
// branch 2 keeps sign(Im w) = sign(Im z), branch 1 the opposite. Real z on a
// cut resolves to the upper side; use i_pre_boundary for either side.
// Throws DomainError if z lies outside the branch domain, ConvergenceError if
// the polished root fails the 1e-11 round trip.
cplx i_pre(const PreMapData& d, cplx z, int branch);
// Boundary value at real x from Im z -> 0 with the sign of side (+1 or -1).
cplx i_pre_boundary(const PreMapData& d, double x, int branch, int side);

// M(s) = -Cg [ (theta^{-1/(theta+1)} s)^2 + (2/theta) theta^{-1/(theta+1)} s + 1/theta - 1 ].
cplx m_quadratic(const PreMapData& d, cplx s);

// g_0(z) = M(I_2(z^{1/theta})), g_k(z) = M(I_1(e^{2(k-1) pi i/theta} z^{1/theta})).
// Defined off the real axis and on the real intervals where the branch is
// analytic; throws BranchCutError on the cuts.
cplx g_function(const PreMapData& d, cplx z, int k);
// Boundary value from the side sign(side) of the real axis.
cplx g_boundary(const PreMapData& d, double x, int k, int side);

// g_0 - g_1 with the cancellation at the critical point removed.
cplx g0_minus_g1(const PreMapData& d, cplx z);

// f with (4/3) f^{3/2} = g_0 - g_1, f(1) = 0, f decreasing through 1. Uses the
// upper boundary values for z > 1. Throws DomainError for |z - 1| > 0.5 or if
// the radicand has the wrong sign (g_0 - g_1 not real positive below 1, not
// imaginary above).
double airy_conformal(const PreMapData& d, double z);

// The closed form -2^{1/3} theta / ((theta-1)^{2/3} (theta+1)^{5/3}).
double airy_conformal_slope_exact(int theta);
// Richardson-extrapolated central difference of airy_conformal at 1.
double airy_conformal_slope_numeric(const PreMapData& d);

struct TauConstants {
  double c1, c2;
};
// c1 = theta^2/(theta^2-1) theta^{-1/(theta+1)}, c2 = (theta-1)^{2/3}(theta+1)^{5/3}/(2^{1/3} theta^2).
TauConstants tau_constants(const PreMapData& d);

// exp((tau^2/2)(g_0 + g_1)(xi)), xi = 1 - theta c2 tau^{-4/3} x. For xi > 1 the
// sum is real (g_{0,+} = g_{1,-} there) and is taken from the upper side.
double conj_factor(const PreMapData& d, double x, double tau);
// The exponent (tau^2/2)(g_0 + g_1)(xi), for callers that need ratios without overflow.
double conj_exponent(const PreMapData& d, double x, double tau);

// Leading and subleading coefficients (of z^{2/(theta+1)} and z^{1/(theta+1)})
// of the large-z expansion of g_k along the ray arg z = phi.
std::pair<cplx, cplx> g_expansion_coefficients(const PreMapData& d, int k, double phi);

}  // namespace edgetrans
