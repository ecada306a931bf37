#include "prec/real.hpp"

#include <atomic>
#include <stdexcept>
#include <vector>

namespace kam {

namespace {
std::atomic<long> g_default_prec{267};
}

long default_precision() { return g_default_prec.load(std::memory_order_relaxed); }
void set_default_precision(long bits) {
  if (bits < 24) throw std::invalid_argument("precision must be >= 24 bits");
  g_default_prec.store(bits, std::memory_order_relaxed);
}

Real Real::from_double(double x, long prec) {
  Real r(prec > 0 ? prec : default_precision());
  mpfr_set_d(r.v_, x, MPFR_RNDN);
  return r;
}

Real Real::from_long(long x, long prec) {
  Real r(prec > 0 ? prec : default_precision());
  mpfr_set_si(r.v_, x, MPFR_RNDN);
  return r;
}

Real Real::from_string(const std::string& s, long prec) {
  Real r(prec > 0 ? prec : default_precision());
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && r.is_nan())
    throw std::invalid_argument("Real::from_string: cannot parse '" + s + "'");
  return r;
}

Real Real::pi(long prec) {
  Real r(prec > 0 ? prec : default_precision());
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

#define KAM_REAL_BINOP(op, fn)                                    \
  Real operator op(const Real& a, const Real& b) {                \
    Real r(result_prec(a.prec(), b.prec()));                      \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                              \
    return r;                                                     \
  }

KAM_REAL_BINOP(+, mpfr_add)
KAM_REAL_BINOP(-, mpfr_sub)
KAM_REAL_BINOP(*, mpfr_mul)
KAM_REAL_BINOP(/, mpfr_div)
#undef KAM_REAL_BINOP

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

#define KAM_REAL_UNFN(name, fn)          \
  Real name(const Real& a) {             \
    Real r(a.prec());                    \
    fn(r.v_, a.v_, MPFR_RNDN);           \
    return r;                            \
  }

KAM_REAL_UNFN(abs, mpfr_abs)
KAM_REAL_UNFN(sqrt, mpfr_sqrt)
KAM_REAL_UNFN(exp, mpfr_exp)
KAM_REAL_UNFN(log, mpfr_log)
KAM_REAL_UNFN(sin, mpfr_sin)
KAM_REAL_UNFN(cos, mpfr_cos)
KAM_REAL_UNFN(sinh, mpfr_sinh)
KAM_REAL_UNFN(cosh, mpfr_cosh)
#undef KAM_REAL_UNFN

Real pow(const Real& a, const Real& b) {
  Real r(result_prec(a.prec(), b.prec()));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, long n) {
  Real r(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  return r;
}

Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}

Real ceil(const Real& a) {
  Real r(a.prec());
  mpfr_ceil(r.raw(), a.raw());
  return r;
}

Real round_nearest(const Real& a) {
  Real r(a.prec());
  mpfr_rint(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real Real::mul_2exp(long e) const {
  Real r(prec());
  if (e >= 0)
    mpfr_mul_2ui(r.v_, v_, static_cast<unsigned long>(e), MPFR_RNDN);
  else
    mpfr_div_2ui(r.v_, v_, static_cast<unsigned long>(-e), MPFR_RNDN);
  return r;
}

}  // namespace kam
