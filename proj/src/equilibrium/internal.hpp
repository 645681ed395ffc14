#pragma once
#include <functional>

#include "edgetrans/equilibrium.hpp"

namespace edgetrans::detail {

// (1/2 pi i) of the contour integral of f over the circle, by the trapezoid
// rule at C.nodes and 2 C.nodes; throws ConvergenceError if they disagree or
// if the result is not real, both beyond 1e-10 relative to the term scale.
double contour_integral(const ContourSpec& C, const std::function<cplx(cplx)>& f, const char* what);

// Several integrals sharing one pass over the nodes.
std::vector<double> contour_integrals(const ContourSpec& C, int count,
                                      const std::function<void(cplx, cplx*)>& f, const char* what);

// (1/2 pi i) of the contour integral of J_{1,1}(s)^k g(s) for k = 0..kmax,
// where g is 1/(s+1)^{p}; used to write E(c, c) and N'_In(-1) as polynomials in c.
std::vector<double> monomial_moments(int theta, int kmax, int p, const ContourSpec& C);

// N_In coefficients n_k = m_k / t in powers of (s + 1), k = 0..deg V.
std::vector<double> n_in_coefficients(double u, double v, const Potential& P, const ContourSpec& C);

// J_{u,v} in the variable w = s + 1 (accurate near s = -1).
cplx j_map_w(int theta, double u, double v, cplx w);

// w = s + 1 of the upper-arc preimage of x in (a, b); complex conjugate
// preimages of real x are paired, so the one with Im w > 0 is returned.
cplx preimage_upper_w(const EquilibriumMeasure& m, double x);

}  // namespace edgetrans::detail
