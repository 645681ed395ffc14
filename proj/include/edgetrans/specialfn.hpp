#pragma once
#include <complex>
#include <vector>

namespace edgetrans {

using cplx = std::complex<double>;

// Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
cplx complex_gamma(cplx z);

// log Gamma by the Stirling series after upward shifting; any branch of the
// logarithm may be returned, so only exp() of the result is meaningful.
// Valid far from the origin, which complex_gamma is not.
cplx complex_lgamma(cplx z);

struct AiryValue {
  double ai;
  double aip;
};

// Power series for |x| <= 6, asymptotic expansion beyond.
AiryValue airy(double x);

// The two regimes, exposed so their overlap can be checked. The series is
// accumulated in long double. The asymptotic form carries Olver's
// exponentially-improved remainder (terminant sums), without which the
// oscillatory side stalls near 1e-8 at |x| = 5.
AiryValue airy_series(double x);
AiryValue airy_asymptotic(double x);

// Lower parameters of G^{m,0}_{0,q}. For the two families used by the limit
// kernels the first entries are the numerator gammas.
struct MeijerParams {
  int theta = 2;
  double alpha = 0.0;
  std::vector<double> b;
};

// (0, -alpha/theta, (1-alpha)/theta, ..., (theta-1-alpha)/theta)
MeijerParams meijer_params_g10(int theta, double alpha);
// ((alpha-theta+1)/theta, ..., alpha/theta, 0)
MeijerParams meijer_params_gtheta0(int theta, double alpha);

// G^{1,0}_{0,theta+1}(x | b): single residue series, entire in x.
double meijer_g10(double x, const MeijerParams& p);

// G^{theta,0}_{0,theta+1}(x | b): sum of theta residue series. Throws
// DomainError (degenerate parameters) if two numerator b differ by an integer.
double meijer_g_theta0(double x, const MeijerParams& p);

enum class MeijerKind { g10, gtheta0 };

struct OracleResult {
  double value;
  double imag_residue;  // imaginary part left over by the quadrature
};

// Independent Mellin-Barnes quadrature. G^{theta,0} uses a vertical line right
// of all numerator poles; G^{1,0} grows along vertical lines for theta >= 2, so
// it uses a parabolic loop around the negative real axis instead.
OracleResult mellin_barnes_oracle(double x, const MeijerParams& p, MeijerKind kind);

}  // namespace edgetrans
