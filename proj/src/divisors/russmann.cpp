#include "divisors/russmann.hpp"

#include <cmath>
#include <cstdlib>

#include "divisors/diophantine.hpp"

namespace kam {

Interval hurwitz_zeta2_upper(const Interval& b) {
  const long p = b.prec();
  if (!b.certainly_positive()) throw DomainError("hurwitz_zeta2_upper: need b > 0");
  Interval one = Interval::point(1L, p);
  Interval partial = Interval::point(0L, p);
  long J = 0;
  long block = 1024;
  Real target(p, 0.0);
  while (true) {
    for (long j = 0; j < block; ++j) {
      Interval t = b + Interval::point(J + j, p);
      partial += one / (t * t);
    }
    J += block;
    // tail enclosure: integral bounds give sum_{j>=J} in [1/(b+J), 1/(b+J-1)]
    Interval tail_lo = one / (b + Interval::point(J, p));
    Interval tail_hi = one / (b + Interval::point(J - 1, p));
    Real width = (tail_hi.upper() - tail_lo.lower());
    target = Real::from_string("1e-10", p) * partial.upper();
    if (width < target || J >= (1L << 21))
      return partial + hull(tail_lo, tail_hi);
    block *= 2;
  }
}

Interval hurwitz_zeta2_upper_fixedJ(const Interval& b, long J) {
  const long p = b.prec();
  if (!b.certainly_positive()) throw DomainError("hurwitz_zeta2_upper_fixedJ: need b > 0");
  Interval one = Interval::point(1L, p);
  Interval partial = Interval::point(0L, p);
  for (long j = 0; j < J; ++j) {
    Interval t = b + Interval::point(j, p);
    partial += one / (t * t);
  }
  Interval tail_hi = one / (b + Interval::point(J - 1, p));
  return partial + hull(Interval::point(0L, p), tail_hi);
}

namespace {

// sum over 0 < |k|_1 <= L of e^{-4 pi |k|_1 delta} / (4 sin^2(pi k.omega)),
// restricted to the shell L_from < |k|_1 <= L (half-space enumeration doubles
// each term because k and -k contribute equally).
Interval divisor_sum_shell(const std::vector<Interval>& iomega, const Interval& delta,
                           long L_from, long L_to) {
  const int n = static_cast<int>(iomega.size());
  const long p = iomega[0].prec();
  Interval pi = Interval::pi(p);
  Interval fourpidelta = (pi * delta).mul_2exp(2);
  // per-order weights e^{-4 pi L delta}
  std::vector<Interval> w(static_cast<size_t>(L_to) + 1, Interval::point(0L, p));
  for (long L = L_from + 1; L <= L_to; ++L)
    w[L] = exp(-(fourpidelta * Interval::point(L, p)));

  Interval acc = Interval::point(0L, p);
  auto add_k = [&](const std::vector<long>& k, long order) {
    Interval dot = Interval::point(0L, p);
    for (int i = 0; i < n; ++i)
      if (k[i] != 0) dot += Interval::point(k[i], p) * iomega[i];
    // |sin(pi x)| with x reduced to the nearest integer
    Real m = round_nearest(dot.mid());
    Interval t = abs(dot - Interval::point(m, p));
    Interval s = sin(pi * t);
    if (s.contains_zero()) throw ResonantInterval(k);
    acc += w[order] / pow(s, 2L);
  };
  if (n == 1) {
    for (long k1 = L_from + 1; k1 <= L_to; ++k1) add_k({k1}, k1);
  } else {
    for (long k2 = L_from + 1; k2 <= L_to; ++k2) add_k({0, k2}, k2);
    for (long k1 = 1; k1 <= L_to; ++k1)
      for (long k2 = -(L_to - k1); k2 <= L_to - k1; ++k2) {
        long order = k1 + std::labs(k2);
        if (order > L_from && order <= L_to) add_k({k1, k2}, order);
      }
  }
  // doubled for the mirrored half-space, then 1/4 from the divisor bound
  return acc.mul_2exp(1).mul_2exp(-2);
}

// Upper bound of int_y^inf u^x e^-u du <= y/(y-x) y^x e^-y (valid for y > x).
Interval tail_integral_upper(const Interval& y, const Interval& x) {
  return (y / (y - x)) * pow(y, x) * exp(-y);
}

Interval cR_from_pieces(const RussmannInput& in, const Interval& divisor_sum) {
  const long p = in.delta.prec();
  const int n = in.n();
  Interval two_tau = in.tau.mul_2exp(1);
  Interval zeta = hurwitz_zeta2_upper_fixedJ(pow(Interval::point(2L, p), in.tau), 1000);
  Interval twopi = Interval::pi(p).mul_2exp(1);
  Interval tail_head = pow(Interval::point(2L, p), static_cast<long>(n) - 3) * zeta *
                       pow(twopi, -two_tau);
  Interval integral;
  if (in.L == 0) {
    integral = gamma_fn(two_tau + Interval::point(1L, p));
  } else {
    Interval y = (Interval::pi(p) * in.delta).mul_2exp(2) * Interval::point(in.L + 1, p);
    if (!(two_tau.upper() < y.lower())) throw TailConditionViolated();
    integral = tail_integral_upper(y, two_tau);
  }
  Interval head = pow(in.gamma, 2L) * pow(in.delta, two_tau) *
                  Interval::point(1L, p).mul_2exp(n) * divisor_sum;
  return sqrt(head + tail_head * integral);
}

}  // namespace

Interval russmann_cR(const RussmannInput& in) {
  const long p = in.delta.prec();
  if (!in.delta.certainly_positive()) throw DomainError("russmann_cR: delta must be > 0");
  Interval dsum = Interval::point(0L, p);
  if (in.L > 0) dsum = divisor_sum_shell(in.iomega, in.delta, 0, in.L);
  return cR_from_pieces(in, dsum);
}

Interval russmann_cR_auto(const std::vector<Interval>& iomega, const Interval& gamma,
                          const Interval& tau, const Interval& delta, long cap, double reltol,
                          long* L_used) {
  double tau_d = tau.upper().to_double();
  double delta_d = delta.lower().to_double();
  long L = static_cast<long>(std::ceil(tau_d / (2.0 * M_PI * delta_d))) + 1;
  if (L < 1) L = 1;
  if (L > cap) L = cap;

  RussmannInput in{iomega, gamma, tau, delta, L};
  Interval dsum = divisor_sum_shell(iomega, delta, 0, L);
  Interval best = cR_from_pieces(in, dsum);
  double prev = best.upper().to_double();
  if (L_used) *L_used = L;
  while (L < cap) {
    long L_next = std::min(cap, 2 * L);
    dsum += divisor_sum_shell(iomega, delta, L, L_next);
    L = L_next;
    in.L = L;
    Interval c = cR_from_pieces(in, dsum);
    double cur = c.upper().to_double();
    if (c.upper() < best.upper()) {
      best = c;
      if (L_used) *L_used = L;
    }
    if (std::abs(cur - prev) < reltol * std::abs(cur)) break;
    prev = cur;
  }
  return best;
}

}  // namespace kam
