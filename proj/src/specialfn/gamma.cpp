#include <cmath>
#include <numbers>

#include "edgetrans/errors.hpp"
#include "edgetrans/specialfn.hpp"

namespace edgetrans {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log sin(pi z), stable for large |Im z| (only exp() of it is used).
cplx log_sin_pi(cplx z) {
  if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
  const cplx i(0.0, 1.0);
  const cplx e = std::exp(2.0 * i * kPi * z);  // |e| <= 1 in the upper half plane
  return -i * kPi * z + std::log((e - 1.0) / (2.0 * i));
}

}  // namespace

cplx complex_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("complex_gamma: pole at non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  cplx series = kLanczos[0];
  for (int k = 1; k < 9; ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

cplx complex_lgamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("complex_lgamma: pole at non-positive integer");
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - complex_lgamma(1.0 - z);
  cplx shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double kStirling[8] = {1.0 / 12.0,   -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
                                          1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0};
  const cplx zinv = 1.0 / z, zinv2 = zinv * zinv;
  cplx tail = 0.0, pw = zinv;
  for (double c : kStirling) {
    tail += c * pw;
    pw *= zinv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + tail - shift;
}

}  // namespace edgetrans
