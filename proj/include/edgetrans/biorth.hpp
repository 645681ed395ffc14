#pragma once
#include <string>
#include <vector>

#include "edgetrans/equilibrium.hpp"
#include "edgetrans/mpreal.hpp"

namespace edgetrans {

// Working precision used when the caller does not choose one: 12 n bits, but
// never below 128 so the 1e-20 and 1e-25 residual contracts are meaningful at
// small n.
int default_precision_bits(int n);

// I_m = int_0^inf x^{m+alpha} e^{-n V_t(x)} dx for m = 0..M.
struct MomentTable {
  Potential P;
  int n = 1;
  int precision_bits = 128;
  std::vector<mp::Real> values;

  int max_index() const { return static_cast<int>(values.size()) - 1; }
  // Decimal text with a precision header; from_text round-trips exactly.
  std::string to_text() const;
  static MomentTable from_text(const std::string& text);
};

// Direct quadrature of one moment: double-exponential rule on [0, X], X chosen
// so the tail is below 2^{-bits}. This is the oracle for the recurrence.
mp::Real moment_quadrature(const Potential& P, int n, int m, int bits);

// V = v2 x^2 + v1 x: I_0, I_1 by quadrature, then
// 2 v2 I_{m+1} + v1 I_m = (t/n)(m + alpha) I_{m-1}. The recurrence is checked
// against direct quadrature at m in {5, 17, 40} (those <= M); a relative
// mismatch above 1e-25 throws ConsistencyError.
MomentTable moments_quadratic(const Potential& P, int n, int M, int bits);
// All moments by quadrature, any polynomial V.
MomentTable moments_general(const Potential& P, int n, int M, int bits);
// Smallest M covering the bimoments of `count` polynomials.
int required_moment_index(int theta, int count);

// Monic p_j(x) and q_k(y) with int p_j(x) q_k(x^theta) w = kappa_j delta_jk,
// coefficients in ascending powers.
struct BiorthFamily {
  int theta = 2;
  int count = 0;
  std::vector<std::vector<mp::Real>> p_coeffs;
  std::vector<std::vector<mp::Real>> q_coeffs;
  std::vector<mp::Real> kappas;
  double max_residual = 0.0;  // max_{j,k} |pairing - kappa_j delta_jk| / |kappa_j|
};

// LDU factorization (no pivoting) of the bimoment matrix I_{j + theta k},
// j, k < count (count defaults to T.n). Throws ConsistencyError if a pivot
// vanishes or the biorthogonality residual exceeds 1e-20.
BiorthFamily biorth_solve(const MomentTable& T, int count = 0);

// Leading principal minors D_1..D_count of the bimoment matrix by Gaussian
// elimination with partial pivoting, independent of biorth_solve.
std::vector<mp::Real> bimoment_minors(const MomentTable& T, int count);

// Values of p_j(x) and q_j(y^theta), j < F.count, in working precision.
std::vector<mp::Real> p_values(const BiorthFamily& F, double x, int bits);
std::vector<mp::Real> q_values(const BiorthFamily& F, double y, int bits);
// x^alpha e^{-n V_t(x)} in working precision.
mp::Real weight(const MomentTable& T, double x);

// K_n(x, y) = x^alpha e^{-n V_t(x)} sum_{j<n} p_j(x) q_j(y^theta) / kappa_j.
// MPFR's exponent range absorbs e^{-nV} underflow, so the sum needs no log
// scaling; the double conversion at the end may underflow to 0 legitimately.
double kernel_Kn(const BiorthFamily& F, const MomentTable& T, double x, double y);
// Same sum from precomputed values.
double kernel_from_values(const BiorthFamily& F, const mp::Real& wx, const std::vector<mp::Real>& px,
                          const std::vector<mp::Real>& qy);

// t = 1 - sqrt(A1/n) tau.
double origin_time(const HardEdgeEquilibrium& eq, int n, double tau);
// (rho n)^{-(theta+1)/(2 theta)}.
double origin_scale(const HardEdgeEquilibrium& eq, int n);
// s K_n(s x, s y) with s = origin_scale.
double rescaled_kernel_origin(const BiorthFamily& F, const MomentTable& T, const HardEdgeEquilibrium& eq,
                              double x, double y);
// (n pi d2_hat)^{-2/3}, d2_hat fitted from the density.
double soft_edge_scale(const SoftEdgeEquilibrium& seq, int n);
// c_n K_n(b_hat + c_n u, b_hat + c_n v).
double rescaled_kernel_soft(const BiorthFamily& F, const MomentTable& T, const SoftEdgeEquilibrium& seq,
                            double u, double v);

enum class KernelScaling { raw, origin_rescaled, soft_edge_rescaled };

struct KernelGrid {
  std::vector<double> xs, ys;
  std::vector<std::vector<double>> values;  // values[i][k] at (xs[i], ys[k])
  KernelScaling kind = KernelScaling::raw;
  double factor = 1.0;  // origin: (rho n)^{-(theta+1)/(2 theta)}; soft: c_n
  double edge = 0.0;    // soft: b_hat
  int n = 0;
  int theta = 2;

  void validate() const;
  std::string to_csv() const;
  std::string to_json() const;
  static KernelGrid from_json(const std::string& text);
};

const char* scaling_name(KernelScaling k);

}  // namespace edgetrans
