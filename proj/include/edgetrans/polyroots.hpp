#pragma once
#include <complex>
#include <vector>

namespace edgetrans {

using cplx = std::complex<double>;

// All complex roots of sum_k coeffs[k] z^k (coeffs.back() != 0) by the
// Aberth-Ehrlich iteration, each polished by Newton on the original
// polynomial. Throws ConvergenceError if the simultaneous iteration stalls.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z);

// Coefficients of the product of two polynomials (ascending powers).
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace edgetrans
