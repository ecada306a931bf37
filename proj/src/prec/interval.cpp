#include "prec/interval.hpp"

#include <cmath>

#include <vector>

namespace kam {

namespace {
long pick(long prec) { return prec > 0 ? prec : default_precision(); }
}

Interval Interval::point(double x, long prec) {
  Interval r(pick(prec));
  mpfr_set_d(r.lo_, x, MPFR_RNDD);
  mpfr_set_d(r.hi_, x, MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::point(long x, long prec) {
  Interval r(pick(prec));
  mpfr_set_si(r.lo_, x, MPFR_RNDD);
  mpfr_set_si(r.hi_, x, MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::point(const Real& x, long prec) {
  Interval r(prec > 0 ? prec : x.prec());
  mpfr_set(r.lo_, x.raw(), MPFR_RNDD);
  mpfr_set(r.hi_, x.raw(), MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::bounds(double lo, double hi, long prec) {
  Interval r(pick(prec));
  mpfr_set_d(r.lo_, lo, MPFR_RNDD);
  mpfr_set_d(r.hi_, hi, MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::bounds(const Real& lo, const Real& hi, long prec) {
  Interval r(prec > 0 ? prec : result_prec(lo.prec(), hi.prec()));
  mpfr_set(r.lo_, lo.raw(), MPFR_RNDD);
  mpfr_set(r.hi_, hi.raw(), MPFR_RNDU);
  r.check();
  return r;
}

Interval Interval::from_string(const std::string& s, long prec) {
  Interval r(pick(prec));
  int e1 = mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD);
  int e2 = mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU);
  if (e1 == -1 || e2 == -1)
    throw std::invalid_argument("Interval::from_string: cannot parse '" + s + "'");
  r.check();
  return r;
}

Interval Interval::pi(long prec) {
  Interval r(pick(prec));
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Real Interval::lower() const {
  Real r(prec());
  mpfr_set(r.raw(), lo_, MPFR_RNDD);
  return r;
}

Real Interval::upper() const {
  Real r(prec());
  mpfr_set(r.raw(), hi_, MPFR_RNDU);
  return r;
}

Real Interval::mid() const {
  Real r(prec());
  mpfr_add(r.raw(), lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDN);
  return r;
}

Real Interval::rad() const {
  Real r(prec());
  mpfr_sub(r.raw(), hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(r.raw(), r.raw(), 1, MPFR_RNDU);
  return r;
}

Real Interval::mag() const {
  Real a(prec()), b(prec());
  mpfr_abs(a.raw(), lo_, MPFR_RNDU);
  mpfr_abs(b.raw(), hi_, MPFR_RNDU);
  return max(a, b);
}

Real Interval::mig() const {
  if (contains_zero()) return Real(prec(), 0.0);
  Real a(prec()), b(prec());
  mpfr_abs(a.raw(), lo_, MPFR_RNDD);
  mpfr_abs(b.raw(), hi_, MPFR_RNDD);
  return min(a, b);
}

bool Interval::contains(const Real& x) const {
  return mpfr_lessequal_p(lo_, x.raw()) && mpfr_greaterequal_p(x.raw(), lo_) &&
         mpfr_lessequal_p(x.raw(), hi_);
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

bool Interval::intersects(const Interval& o) const {
  return !(mpfr_less_p(hi_, o.lo_) || mpfr_less_p(o.hi_, lo_));
}

std::string Interval::to_string(int digits) const {
  std::vector<char> buf(2 * static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "[%.*Re, %.*Re]", digits - 1, lo_, digits - 1, hi_);
  return std::string(buf.data());
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  const int sal = mpfr_sgn(a.lo_), sah = mpfr_sgn(a.hi_);
  const int sbl = mpfr_sgn(b.lo_), sbh = mpfr_sgn(b.hi_);
  if (sal >= 0) {          // a >= 0
    if (sbl >= 0) {        // b >= 0
      mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    } else if (sbh <= 0) { // b <= 0
      mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.hi_, MPFR_RNDU);
    } else {               // 0 in b
      mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    }
  } else if (sah <= 0) {   // a <= 0
    if (sbl >= 0) {
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    } else if (sbh <= 0) {
      mpfr_mul(r.lo_, a.hi_, b.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    } else {
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    }
  } else {                 // 0 in a
    if (sbl >= 0) {
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    } else if (sbh <= 0) {
      mpfr_mul(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    } else {
      // both straddle zero: lo = min(al*bh, ah*bl), hi = max(al*bl, ah*bh)
      mpfr_t t;
      mpfr_init2(t, r.prec());
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
      if (mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
      mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
      if (mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      mpfr_clear(t);
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero())
    throw DivisionByZeroInterval("interval division: denominator contains 0");
  Interval r(result_prec(a.prec(), b.prec()));
  const int sal = mpfr_sgn(a.lo_), sah = mpfr_sgn(a.hi_);
  if (mpfr_sgn(b.lo_) > 0) {  // b > 0
    if (sal >= 0) {
      mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    } else if (sah <= 0) {
      mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mpfr_div(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    } else {
      mpfr_div(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    }
  } else {  // b < 0
    if (sal >= 0) {
      mpfr_div(r.lo_, a.hi_, b.hi_, MPFR_RNDD);
      mpfr_div(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    } else if (sah <= 0) {
      mpfr_div(r.lo_, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_div(r.hi_, a.lo_, b.hi_, MPFR_RNDU);
    } else {
      mpfr_div(r.lo_, a.hi_, b.hi_, MPFR_RNDD);
      mpfr_div(r.hi_, a.lo_, b.hi_, MPFR_RNDU);
    }
  }
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& a) {
  Interval r(a.prec());
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  mpfr_set_zero(r.lo_, 1);
  mpfr_abs(r.hi_, a.lo_, MPFR_RNDU);
  if (mpfr_cmpabs(a.hi_, a.lo_) > 0) mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt: negative lower endpoint");
  Interval r(a.prec());
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec());
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw DomainError("log: nonpositive lower endpoint");
  Interval r(a.prec());
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sinh(const Interval& a) {
  Interval r(a.prec());
  mpfr_sinh(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sinh(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval cosh(const Interval& a) {
  Interval r(a.prec());
  if (a.contains_zero()) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
    mpfr_t m;
    mpfr_init2(m, a.prec());
    mpfr_abs(m, a.lo_, MPFR_RNDU);
    if (mpfr_cmpabs(a.hi_, a.lo_) > 0) mpfr_abs(m, a.hi_, MPFR_RNDU);
    mpfr_cosh(r.hi_, m, MPFR_RNDU);
    mpfr_clear(m);
  } else if (mpfr_sgn(a.lo_) > 0) {
    mpfr_cosh(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_cosh(r.hi_, a.hi_, MPFR_RNDU);
  } else {
    mpfr_cosh(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_cosh(r.hi_, a.lo_, MPFR_RNDU);
  }
  return r;
}

// Range analysis for sin: endpoint values plus a check whether a critical
// point pi/2 + 2k*pi (max) or -pi/2 + 2k*pi (min) can lie in the argument
// range; ambiguous cases saturate the bound to +-1, which stays rigorous.
Interval sin(const Interval& a) {
  const long p = a.prec();
  Interval twopi = Interval::pi(p).mul_2exp(1);
  Real w(p);
  mpfr_sub(w.raw(), a.hi_raw(), a.lo_raw(), MPFR_RNDU);
  if (!a.is_finite() || w >= twopi.upper())
    return Interval::bounds(-1.0, 1.0, p);

  Real slo_d(p), slo_u(p), shi_d(p), shi_u(p);
  mpfr_sin(slo_d.raw(), a.lo_raw(), MPFR_RNDD);
  mpfr_sin(slo_u.raw(), a.lo_raw(), MPFR_RNDU);
  mpfr_sin(shi_d.raw(), a.hi_raw(), MPFR_RNDD);
  mpfr_sin(shi_u.raw(), a.hi_raw(), MPFR_RNDU);
  Real rlo = min(slo_d, shi_d), rhi = max(slo_u, shi_u);

  auto crosses = [&](int sign_half_pi) -> bool {
    Interval c = Interval::pi(p).mul_2exp(-1);
    if (sign_half_pi < 0) c = -c;
    Interval lo_k = (Interval::point(a.lower(), p) - c) / twopi;
    Interval hi_k = (Interval::point(a.upper(), p) - c) / twopi;
    double kd_lo = lo_k.lo_d(), kd_hi = hi_k.hi_d();
    if (!(kd_lo > -1e15 && kd_hi < 1e15)) return true;  // argument too large to resolve
    long klo = static_cast<long>(std::floor(kd_lo)) - 1;
    long khi = static_cast<long>(std::ceil(kd_hi)) + 1;
    for (long k = klo; k <= khi; ++k) {
      Interval t = c + twopi * Interval::point(k, p);
      if (!(mpfr_less_p(t.hi_raw(), a.lo_raw()) || mpfr_greater_p(t.lo_raw(), a.hi_raw())))
        return true;
    }
    return false;
  };
  if (crosses(+1)) rhi = Real(p, 1.0);
  if (crosses(-1)) rlo = Real(p, -1.0);
  if (rlo < Real(p, -1.0)) rlo = Real(p, -1.0);
  if (rhi > Real(p, 1.0)) rhi = Real(p, 1.0);
  return Interval::bounds(rlo, rhi, p);
}

Interval cos(const Interval& a) {
  // cos(x) = sin(x + pi/2)
  return sin(a + Interval::pi(a.prec()).mul_2exp(-1));
}

Interval pow(const Interval& x, const Interval& y) {
  if (mpfr_sgn(x.lo_raw()) <= 0)
    throw DomainError("pow: base must be positive");
  return exp(y * log(x));
}

Interval pow(const Interval& x, long n) {
  const long p = x.prec();
  if (n == 0) return Interval::point(1L, p);
  if (n < 0) return Interval::point(1L, p) / pow(x, -n);
  Interval r(p);
  bool even = (n % 2 == 0);
  if (mpfr_sgn(x.lo_raw()) >= 0 || !even) {
    // monotone (x >= 0, or odd power)
    mpfr_pow_si(r.lo_, x.lo_raw(), n, MPFR_RNDD);
    mpfr_pow_si(r.hi_, x.hi_raw(), n, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(x.hi_raw()) <= 0) {  // x <= 0, even power: decreasing
    mpfr_pow_si(r.lo_, x.hi_raw(), n, MPFR_RNDD);
    mpfr_pow_si(r.hi_, x.lo_raw(), n, MPFR_RNDU);
    return r;
  }
  // straddles zero, even power: [0, mag^n]
  Real m = x.mag();
  mpfr_set_zero(r.lo_, 1);
  mpfr_pow_si(r.hi_, m.raw(), n, MPFR_RNDU);
  return r;
}

Interval gamma_fn(const Interval& x) {
  if (mpfr_cmp_ui(x.lo_raw(), 2) < 0)
    throw DomainError("gamma_fn: implemented for x >= 2 (monotone branch)");
  Interval r(x.prec());
  mpfr_gamma(r.lo_, x.lo_raw(), MPFR_RNDD);
  mpfr_gamma(r.hi_, x.hi_raw(), MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  mpfr_min(r.lo_, a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

Interval imax(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  mpfr_max(r.lo_, a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

Interval imin(const Interval& a, const Interval& b) {
  Interval r(result_prec(a.prec(), b.prec()));
  mpfr_min(r.lo_, a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

Interval Interval::mul_2exp(long e) const {
  Interval r(prec());
  if (e >= 0) {
    mpfr_mul_2ui(r.lo_, lo_, static_cast<unsigned long>(e), MPFR_RNDD);
    mpfr_mul_2ui(r.hi_, hi_, static_cast<unsigned long>(e), MPFR_RNDU);
  } else {
    mpfr_div_2ui(r.lo_, lo_, static_cast<unsigned long>(-e), MPFR_RNDD);
    mpfr_div_2ui(r.hi_, hi_, static_cast<unsigned long>(-e), MPFR_RNDU);
  }
  return r;
}

}  // namespace kam
