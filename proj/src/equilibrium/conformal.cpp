#include <cmath>
#include <limits>
#include <vector>

#include "edgetrans/errors.hpp"
#include "edgetrans/polyroots.hpp"
#include "internal.hpp"

namespace edgetrans {

namespace {

struct Candidate {
  cplx w;
  double residual;
};

// Roots w = s + 1 of (u (w - 1) + v)^theta w - z^theta (w - 1) for which
// J_{u,v}(w - 1) = z on the principal branch, Newton-polished on J - z.
std::vector<Candidate> valid_roots(const EquilibriumMeasure& m, cplx z) {
  const int th = m.theta;
  const double u = m.u, v = m.v;
  // (u w + (v - u))^theta by the binomial theorem, then times w.
  std::vector<cplx> lin(th + 1, 0.0);
  for (int j = 0; j <= th; ++j) {
    double binom = 1.0;
    for (int i = 0; i < j; ++i) binom = binom * (th - i) / (i + 1);
    lin[j] = binom * std::pow(u, j) * std::pow(v - u, th - j);
  }
  const cplx zt = std::pow(z, th);
  std::vector<cplx> q(th + 2, 0.0);
  for (int j = 0; j <= th; ++j) q[j + 1] = lin[j];
  q[1] -= zt;
  q[0] += zt;

  std::vector<Candidate> out;
  const double scale = std::abs(z);
  for (cplx w : polynomial_roots(q)) {
    if (w == 0.0 || w == 1.0) continue;
    for (int it = 0; it < 8; ++it) {
      const cplx J = detail::j_map_w(th, u, v, w);
      const cplx dJ = J * (u / (u * w + (v - u)) + (1.0 / w - 1.0 / (w - 1.0)) / static_cast<double>(th));
      if (dJ == 0.0 || !std::isfinite(std::abs(dJ))) break;
      const cplx step = (J - z) / dJ;
      // Near the double roots at the endpoints the Newton step is unreliable.
      if (std::abs(step) > 1e-3 * std::abs(w)) break;
      w -= step;
      if (std::abs(step) <= 1e-16 * std::abs(w)) break;
    }
    const double res = std::abs(detail::j_map_w(th, u, v, w) - z);
    if (res <= 1e-6 * scale) out.push_back({w, res});
  }
  return out;
}

}  // namespace

InverseMaps inverse_maps(const EquilibriumMeasure& m, cplx z) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (z == 0.0) return {cplx(-1.0, 0.0), cplx(-1.0, 0.0)};
  // Real z is resolved as z + i0; the classification is done just above the
  // axis and the roots are then polished at z itself.
  const bool real = z.imag() == 0.0;
  const cplx zq = real ? z + cplx(0.0, 1e-9 * std::abs(z)) : z;
  const auto cand = valid_roots(m, zq);
  const double sgn = zq.imag() > 0.0 ? 1.0 : -1.0;
  const Candidate* c1 = nullptr;
  const Candidate* c2 = nullptr;
  for (const auto& c : cand) {
    if (c.w.imag() * sgn > 0.0) {
      if (!c1 || c.residual < c1->residual) c1 = &c;
    } else if (c.w.imag() * sgn < 0.0) {
      if (!c2 || c.residual < c2->residual) c2 = &c;
    }
  }
  if (!c1) throw ConsistencyError("inverse_maps: root-classification failure (no exterior preimage)");
  InverseMaps out{c1->w - 1.0, c2 ? c2->w - 1.0 : cplx(nan, nan)};
  if (real) {
    // Move to the axis: pick the root of the unperturbed problem nearest each.
    const auto exact = valid_roots(m, z);
    auto nearest = [&](cplx s) {
      if (!std::isfinite(s.real())) return s;
      cplx best = s;
      double dist = std::numeric_limits<double>::infinity();
      for (const auto& c : exact) {
        const double d = std::abs(c.w - 1.0 - s);
        if (d < dist) {
          dist = d;
          best = c.w - 1.0;
        }
      }
      return best;
    };
    out.s1 = nearest(out.s1);
    out.s2 = nearest(out.s2);
  }
  return out;
}

namespace detail {

// w = s + 1 of the upper-arc preimage of x in (a, b).
cplx preimage_upper_w(const EquilibriumMeasure& m, double x) {
  const auto cand = valid_roots(m, cplx(x, 0.0));
  const Candidate* best = nullptr;
  for (const auto& c : cand) {
    if (c.w.imag() == 0.0) continue;
    if (!best || c.residual < best->residual) best = &c;
  }
  if (!best) throw ConsistencyError("preimage_upper: no complex preimage; x is outside the support");
  const cplx w = best->w;
  return w.imag() > 0.0 ? w : std::conj(w);
}

}  // namespace detail

cplx preimage_upper(const EquilibriumMeasure& m, double x) { return detail::preimage_upper_w(m, x) - 1.0; }

}  // namespace edgetrans
