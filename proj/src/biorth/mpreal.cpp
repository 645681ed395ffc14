#include "edgetrans/mpreal.hpp"

#include <algorithm>
#include <cmath>

#include "edgetrans/errors.hpp"

namespace edgetrans::mp {

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double x, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(const std::string& decimal, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw DomainError("mp::Real: malformed decimal '" + decimal + "'");
  }
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  // Leave o as a valid zero of minimal precision.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (precision() != o.precision()) mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real& Real::operator=(double x) {
  mpfr_set_d(v_, x, MPFR_RNDN);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

double Real::log_abs() const {
  if (is_zero()) return -INFINITY;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

std::string Real::to_string(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(precision() * 0.30103)) + 2;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(double x) {
  mpfr_mul_d(v_, v_, x, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(double x) {
  mpfr_div_d(v_, v_, x, MPFR_RNDN);
  return *this;
}
Real& Real::operator+=(double x) {
  mpfr_add_d(v_, v_, x, MPFR_RNDN);
  return *this;
}
Real& Real::add_product(const Real& a, const Real& b) {
  mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, double b) {
  Real r(a.precision());
  mpfr_mul_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator*(double a, const Real& b) { return b * a; }

#define ET_MP_UNARY(name, fn)                  \
  Real name(const Real& a) {                   \
    Real r(a.precision());                     \
    fn(r.get(), a.get(), MPFR_RNDN);           \
    return r;                                  \
  }
ET_MP_UNARY(abs, mpfr_abs)
ET_MP_UNARY(exp, mpfr_exp)
ET_MP_UNARY(log, mpfr_log)
ET_MP_UNARY(sqrt, mpfr_sqrt)
ET_MP_UNARY(sinh, mpfr_sinh)
ET_MP_UNARY(cosh, mpfr_cosh)
#undef ET_MP_UNARY

Real pow(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, long n) {
  Real r(a.precision());
  mpfr_pow_si(r.get(), a.get(), n, MPFR_RNDN);
  return r;
}

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real ldexp_one(long e, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
  return r;
}

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }

}  // namespace edgetrans::mp
