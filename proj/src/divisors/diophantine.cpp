#include "divisors/diophantine.hpp"

#include <cmath>
#include <cstdio>

namespace kam {

namespace {

// Certified lower bound of min_m |x - m| over all members of x. Throws when
// the interval contains an integer (target of the resonance check).
Real nearest_integer_distance_lower(const Interval& x, const std::vector<long>& k) {
  const long p = x.prec();
  Real a = x.lower(), b = x.upper();
  Real fa = floor(a);
  // an integer lies inside iff ceil(a) <= b
  if (ceil(a) <= b) throw ResonantInterval(k);
  // both endpoints between m0 and m0+1: distance is min at an endpoint
  Real d1(p), d2(p);
  mpfr_sub(d1.raw(), a.raw(), fa.raw(), MPFR_RNDD);
  Real m1 = fa + Real(p, 1.0);
  mpfr_sub(d2.raw(), m1.raw(), b.raw(), MPFR_RNDD);
  return min(d1, d2);
}

Real dot_lower_dist(const std::vector<Interval>& iomega, const std::vector<long>& k) {
  const long p = iomega[0].prec();
  Interval dot = Interval::point(0L, p);
  for (size_t i = 0; i < iomega.size(); ++i)
    if (k[i] != 0) dot += Interval::point(k[i], p) * iomega[i];
  return nearest_integer_distance_lower(dot, k);
}

// |k|_1^tau rounded down, for exact integer L >= 1 and Real tau.
Real pow_down(long L, const Real& tau) {
  Real r(tau.prec());
  Real base = Real::from_long(L, tau.prec());
  mpfr_pow(r.raw(), base.raw(), tau.raw(), MPFR_RNDD);
  return r;
}

Real mul_down(const Real& a, const Real& b) {
  Real r(result_prec(a.prec(), b.prec()));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDD);
  return r;
}

}  // namespace

ResonanceTable build_resonance_table(const std::vector<Interval>& iomega, long M) {
  const int n = static_cast<int>(iomega.size());
  if (n < 1 || n > 2) throw std::invalid_argument("resonance table: only n = 1, 2 supported");
  const long p = iomega[0].prec();
  ResonanceTable tbl;
  tbl.M = M;
  tbl.dmin.assign(static_cast<size_t>(M) + 1, Real(p, 0.0));
  std::vector<bool> seen(static_cast<size_t>(M) + 1, false);

  auto feed = [&](const std::vector<long>& k, long order) {
    Real d = dot_lower_dist(iomega, k);
    if (!seen[order] || d < tbl.dmin[order]) {
      tbl.dmin[order] = d;
      seen[order] = true;
    }
  };

  // Half-space enumeration (k and -k share the same distance).
  if (n == 1) {
    for (long k1 = 1; k1 <= M; ++k1) feed({k1}, k1);
  } else {
    for (long k2 = 1; k2 <= M; ++k2) feed({0, k2}, k2);
    for (long k1 = 1; k1 <= M; ++k1)
      for (long k2 = -(M - k1); k2 <= M - k1; ++k2) feed({k1, k2}, k1 + std::labs(k2));
  }
  return tbl;
}

Real gamma_lower_from_table(const ResonanceTable& tbl, const Real& tau) {
  Real best = mul_down(tbl.dmin[1], pow_down(1, tau));
  for (long L = 2; L <= tbl.M; ++L) {
    Real v = mul_down(tbl.dmin[L], pow_down(L, tau));
    if (v < best) best = v;
  }
  return best;
}

Interval gamma_lower(const std::vector<Interval>& iomega, const Interval& tau, long M) {
  ResonanceTable tbl = build_resonance_table(iomega, M);
  Real g = gamma_lower_from_table(tbl, tau.lower());
  return Interval::point(g);
}

Interval measure_geometry_constant(const std::vector<Interval>& iomega) {
  const int n = static_cast<int>(iomega.size());
  const long p = iomega[0].prec();
  Interval diam2 = Interval::point(0L, p);
  Interval meas = Interval::point(1L, p);
  for (const auto& w : iomega) {
    Interval width = Interval::point(w.upper(), p) - Interval::point(w.lower(), p);
    diam2 += width * width;
    meas = meas * width;
  }
  Interval diam = sqrt(diam2);
  long fact = 1;
  for (long j = 2; j < n; ++j) fact *= j;
  Interval c = Interval::point(1L, p).mul_2exp(2L * n) / Interval::point(fact, p);
  return c * pow(diam, static_cast<long>(n)) / meas;
}

namespace {

// 1 - C gamma_M(tau) / ((tau - n) M^{tau - n}); strictly increasing in tau.
double p_hat(const ResonanceTable& tbl, const Interval& C, int n, double tau_d, long prec) {
  Real tau = Real::from_double(tau_d, prec);
  Real g = gamma_lower_from_table(tbl, tau);
  Interval t = Interval::point(tau);
  Interval den = (t - Interval::point(static_cast<long>(n), prec)) *
                 pow(Interval::point(tbl.M, prec), t - Interval::point(static_cast<long>(n), prec));
  Interval val = Interval::point(1L, prec) - C * Interval::point(g) / den;
  return val.mid().to_double();
}

}  // namespace

DiophantineCert tau_min(const std::vector<Interval>& iomega, long M) {
  const int n = static_cast<int>(iomega.size());
  const long p = iomega[0].prec();
  if (M < n) throw std::invalid_argument("tau_min: cutoff must be at least the dimension");
  ResonanceTable tbl = build_resonance_table(iomega, M);
  Interval C = measure_geometry_constant(iomega);

  double lo = n + 1e-3, hi = n + 1.0;
  while (p_hat(tbl, C, n, hi, p) <= 0.0) {
    hi += 1.0;
    if (hi > n + 60.0) throw std::runtime_error("tau_min: no root below tau = n + 60");
  }
  if (p_hat(tbl, C, n, lo, p) >= 0.0) {
    // root sits below the initial bracket; squeeze toward n
    while (lo > n + 1e-9 && p_hat(tbl, C, n, lo, p) >= 0.0) lo = n + (lo - n) / 4.0;
  }
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    if (p_hat(tbl, C, n, mid, p) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // report rounded up to 2 decimals
  double tau_rep = std::ceil(hi * 100.0 - 1e-9) / 100.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", tau_rep);

  DiophantineCert cert;
  cert.iomega = iomega;
  cert.tau = Interval::from_string(buf, p);
  cert.tau_text = buf;
  cert.M = M;
  cert.C_iomega = C;
  cert.from_tau_min = true;
  cert.gamma = Interval::point(gamma_lower_from_table(tbl, cert.tau.lower()));
  cert.measure_lb = measure_lower_bound(cert, cert.gamma);
  return cert;
}

Interval measure_lower_bound(const DiophantineCert& cert, const Interval& gamma) {
  const long p = gamma.prec();
  const int n = cert.n();
  if (!cert.from_tau_min)
    throw std::invalid_argument("measure_lower_bound: certificate lacks measure data");
  if (gamma.lower() > cert.gamma.upper()) throw GammaTooLarge();
  Interval nn = Interval::point(static_cast<long>(n), p);
  Interval den = (cert.tau - nn) * pow(Interval::point(cert.M, p), cert.tau - nn);
  return Interval::point(1L, p) - cert.C_iomega * gamma / den;
}

DiophantineCert golden_cert(long prec) {
  const long p = prec > 0 ? prec : default_precision();
  Interval five = Interval::point(5L, p);
  DiophantineCert cert;
  cert.iomega = {(sqrt(five) - Interval::point(1L, p)).mul_2exp(-1)};
  cert.gamma = (Interval::point(3L, p) - sqrt(five)).mul_2exp(-1);
  cert.tau = Interval::point(1L, p);
  cert.tau_text = "1.00";
  cert.from_tau_min = false;
  return cert;
}

}  // namespace kam
