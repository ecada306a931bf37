#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "prec/real.hpp"

namespace kam {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};
struct DivisionByZeroInterval : std::runtime_error {
  explicit DivisionByZeroInterval(const std::string& m) : std::runtime_error(m) {}
};

// Closed interval [lo, hi] with arbitrary-precision endpoints and outward
// rounding: every operation returns an enclosure of the exact range over all
// members of the inputs. Endpoints may be +-inf; NaN endpoints are rejected at
// construction. Values are immutable in the sense that no operation mutates
// its arguments; there is no global rounding state.
class Interval {
 public:
  Interval() { init(default_precision()); set_zero(); }
  explicit Interval(long prec) { init(prec); set_zero(); }
  Interval(const Interval& o) {
    init(o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  Interval(Interval&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  Interval& operator=(const Interval& o) {
    if (this != &o) {
      mpfr_set_prec(lo_, o.prec());
      mpfr_set_prec(hi_, o.prec());
      mpfr_set(lo_, o.lo_, MPFR_RNDD);
      mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
  }
  Interval& operator=(Interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  // Point interval (doubles and longs are exactly representable).
  static Interval point(double x, long prec = 0);
  static Interval point(long x, long prec = 0);
  static Interval point(const Real& x, long prec = 0);
  static Interval bounds(double lo, double hi, long prec = 0);
  static Interval bounds(const Real& lo, const Real& hi, long prec = 0);
  // Tight enclosure of a decimal literal: [nextdown(d), nextup(d)] at the
  // working precision, exact when d is representable.
  static Interval from_string(const std::string& s, long prec = 0);
  static Interval pi(long prec = 0);

  long prec() const { return mpfr_get_prec(lo_); }
  Real lower() const;
  Real upper() const;
  Real mid() const;
  // Upper bound of the half-width.
  Real rad() const;
  // Magnitude: max |x| over members, rounded up.
  Real mag() const;
  // Mignitude: min |x| over members, rounded down (0 if 0 is a member).
  Real mig() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool contains(const Real& x) const;
  bool contains(double x) const;
  bool contains(const Interval& o) const;  // o subset of *this
  bool is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  // Certain comparisons (true only when it holds for all members).
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool intersects(const Interval& o) const;

  std::string to_string(int digits = 20) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& b) { *this = *this + b; return *this; }
  Interval& operator-=(const Interval& b) { *this = *this - b; return *this; }
  Interval& operator*=(const Interval& b) { *this = *this * b; return *this; }

  friend Interval abs(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval sin(const Interval& a);
  friend Interval cos(const Interval& a);
  friend Interval sinh(const Interval& a);
  friend Interval cosh(const Interval& a);
  // x^y = exp(y log x); requires x > 0.
  friend Interval pow(const Interval& x, const Interval& y);
  friend Interval pow(const Interval& x, long n);
  friend Interval gamma_fn(const Interval& x);
  friend Interval hull(const Interval& a, const Interval& b);
  // max/min over members: [max(lo,lo'), max(hi,hi')] etc.
  friend Interval imax(const Interval& a, const Interval& b);
  friend Interval imin(const Interval& a, const Interval& b);

  // Exact scaling by 2^e.
  Interval mul_2exp(long e) const;

  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }

 private:
  void init(long prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
  }
  void set_zero() {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  void check() const {
    if (mpfr_nan_p(lo_) || mpfr_nan_p(hi_))
      throw std::invalid_argument("Interval: NaN endpoint");
    if (mpfr_greater_p(lo_, hi_))
      throw std::invalid_argument("Interval: lo > hi");
  }
  mpfr_t lo_, hi_;
  friend class IntervalOps;
};

}  // namespace kam
