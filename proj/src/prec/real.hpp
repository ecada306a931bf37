#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

namespace kam {

// Default mantissa length (bits) used by value constructors that do not take
// an explicit precision. Set once at program start (CLI flag / env var).
long default_precision();
void set_default_precision(long bits);

// Arbitrary-precision floating-point value, round-to-nearest semantics.
// Used by the non-rigorous pipeline (Newton solver, parameter tuner).
class Real {
 public:
  Real() { mpfr_init2(v_, default_precision()); mpfr_set_zero(v_, 1); }
  explicit Real(long prec, double x = 0.0) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  static Real from_double(double x, long prec = 0);
  static Real from_long(long x, long prec = 0);
  // Decimal string, rounded to nearest at the given precision.
  static Real from_string(const std::string& s, long prec = 0);
  static Real pi(long prec);

  long prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;
  Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real exp(const Real& a);
  friend Real log(const Real& a);
  friend Real sin(const Real& a);
  friend Real cos(const Real& a);
  friend Real sinh(const Real& a);
  friend Real cosh(const Real& a);
  friend Real pow(const Real& a, const Real& b);
  friend Real pow(const Real& a, long n);
  friend Real floor(const Real& a);
  friend Real ceil(const Real& a);
  friend Real round_nearest(const Real& a);
  friend Real max(const Real& a, const Real& b) { return (a >= b) ? a : b; }
  friend Real min(const Real& a, const Real& b) { return (a <= b) ? a : b; }

  // Exact scaling by 2^e (no rounding).
  Real mul_2exp(long e) const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

 private:
  mpfr_t v_;
};

inline long result_prec(long a, long b) { return a > b ? a : b; }

}  // namespace kam
