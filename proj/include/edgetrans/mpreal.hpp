#pragma once
#include <mpfr.h>

#include <string>

namespace edgetrans::mp {

// Owning MPFR scalar. Each value carries its own precision; binary operators
// produce the larger of the operand precisions, rounding to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(double x, mpfr_prec_t bits);
  Real(const std::string& decimal, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  Real& operator=(double x);
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // log|x| in double width; finite even when to_double() under- or overflows.
  double log_abs() const;
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  std::string to_string(int digits = 0) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(double x);
  Real& operator/=(double x);
  Real& operator+=(double x);
  // this += a * b
  Real& add_product(const Real& a, const Real& b);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Real& a, double b);
Real operator*(double a, const Real& b);

Real abs(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sqrt(const Real& a);
Real sinh(const Real& a);
Real cosh(const Real& a);
Real pow(const Real& a, const Real& b);
Real pow(const Real& a, long n);
Real pi(mpfr_prec_t bits);
// 2^e in the given precision.
Real ldexp_one(long e, mpfr_prec_t bits);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);

}  // namespace edgetrans::mp
