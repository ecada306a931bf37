#include "fourier/dft_bounds.hpp"

#include <cstdlib>

namespace kam {

namespace {

long prec_of(const Interval& a, const Interval& b) { return result_prec(a.prec(), b.prec()); }

Interval exp_term(const Interval& x) { return exp(x); }

// 1-D full aliasing sum s_N(k, rhohat) minus the k-th term, in the closed form
// e^{-2 pi rhohat N} (e^{2 pi rhohat |k|} + e^{-2 pi rhohat |k|}) / (1 - e^{-2 pi rhohat N}).
Interval s_star_axis(long k, int N, const Interval& rhohat) {
  const long p = rhohat.prec();
  Interval twopirh = Interval::pi(p).mul_2exp(1) * rhohat;
  Interval eN = exp_term(-(twopirh * Interval::point(static_cast<long>(N), p)));
  Interval ka = Interval::point(std::labs(k), p);
  Interval ek = exp_term(twopirh * ka);
  Interval emk = exp_term(-(twopirh * ka));
  return eN * (ek + emk) / (Interval::point(1L, p) - eN);
}

}  // namespace

Interval alias_coeff_bound(const std::vector<int>& k, const Interval& rhohat,
                           const GridShape& N) {
  const long p = rhohat.prec();
  if (static_cast<int>(k.size()) != N.n())
    throw IndexOutOfRange("alias_coeff_bound: index dimension mismatch");
  for (int ax = 0; ax < N.n(); ++ax)
    if (2 * k[ax] < -N.N[ax] || 2 * k[ax] >= N.N[ax])
      throw IndexOutOfRange("alias_coeff_bound: index outside the kept set");
  if (!rhohat.certainly_positive()) throw InvalidStrip("alias_coeff_bound: rhohat must be > 0");

  // prod(e_l + t_l) - prod(e_l) expanded over nonempty subsets of axes, where
  // e_l = e^{-2 pi rhohat |k_l|} and t_l is the 1-D aliasing remainder; this
  // avoids the cancellation of the direct product difference.
  const int n = N.n();
  Interval twopirh = Interval::pi(p).mul_2exp(1) * rhohat;
  std::vector<Interval> e, t;
  for (int ax = 0; ax < n; ++ax) {
    e.push_back(exp_term(-(twopirh * Interval::point(std::labs(static_cast<long>(k[ax])), p))));
    t.push_back(s_star_axis(k[ax], N.N[ax], rhohat));
  }
  Interval total = Interval::point(0L, p);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Interval term = Interval::point(1L, p);
    for (int ax = 0; ax < n; ++ax) term = term * ((mask >> ax) & 1u ? t[ax] : e[ax]);
    total += term;
  }
  return total;
}

Interval dft_mu(int N, const Interval& delta) {
  const long p = delta.prec();
  if (N % 2 == 0) return Interval::point(1L, p);
  Interval pid = Interval::pi(p) * delta;
  Interval e1 = exp_term(pid);
  Interval e2 = exp_term(pid.mul_2exp(1));
  return e1.mul_2exp(1) / (e2 + Interval::point(1L, p));
}

Interval dft_nu(int N, const Interval& delta) {
  const long p = delta.prec();
  Interval one = Interval::point(1L, p);
  Interval e2 = exp_term(Interval::pi(p).mul_2exp(1) * delta);
  Interval head = (e2 + one) / (e2 - one);
  Interval tailf = dft_mu(N, delta) * exp_term(-(Interval::pi(p) * delta * Interval::point(static_cast<long>(N), p)));
  return head * (one - tailf);
}

Interval one_minus_prod(const std::vector<Interval>& xs) {
  const int n = static_cast<int>(xs.size());
  const long p = xs.empty() ? default_precision() : xs[0].prec();
  Interval total = Interval::point(0L, p);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Interval term = Interval::point(1L, p);
    int bits = 0;
    for (int ax = 0; ax < n; ++ax)
      if ((mask >> ax) & 1u) {
        term = term * xs[ax];
        ++bits;
      }
    total = (bits % 2 == 1) ? total + term : total - term;
  }
  return total;
}

ErrorConstants approx_error_constant(const Interval& rho, const Interval& rhohat,
                                     const GridShape& N) {
  const long p = prec_of(rho, rhohat);
  if (!(rho.upper() < rhohat.lower()))
    throw InvalidStrip("approx_error_constant: need 0 <= rho < rhohat");
  if (rho.lower() < Real(p, 0.0)) throw InvalidStrip("approx_error_constant: rho must be >= 0");
  const int n = N.n();
  Interval one = Interval::point(1L, p);
  Interval pi = Interval::pi(p);

  // shared prefactor prod(1 / (1 - e^{-2 pi rhohat N_l})) and its ingredients
  std::vector<Interval> eN;  // e^{-2 pi rhohat N_l}
  Interval pref = one;
  for (int ax = 0; ax < n; ++ax) {
    Interval v = exp_term(-(pi.mul_2exp(1) * rhohat * Interval::point(static_cast<long>(N.N[ax]), p)));
    eN.push_back(v);
    pref = pref * (one / (one - v));
  }

  // S1: sum over sign patterns sigma != (1,...,1)
  Interval S1 = Interval::point(0L, p);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {  // mask bit set => sigma_l = -1
    Interval term = one;
    for (int ax = 0; ax < n; ++ax) {
      bool minus = (mask >> ax) & 1u;
      Interval delta = minus ? -(rhohat + rho) : (rhohat - rho);
      Interval nu = dft_nu(N.N[ax], delta);
      Interval ef = minus ? exp_term(-(pi.mul_2exp(1) * rhohat * Interval::point(static_cast<long>(N.N[ax]), p)))
                          : one;
      term = term * ef * nu;
    }
    S1 += term;
  }
  S1 = pref * S1;

  // S2: prefactor * (1 - prod(1 - e^{-2 pi rhohat N_l})) * prod nu_l(rhohat-rho)
  Interval nuprod = one;
  for (int ax = 0; ax < n; ++ax) nuprod = nuprod * dft_nu(N.N[ax], rhohat - rho);
  Interval S2 = pref * one_minus_prod(eN) * nuprod;

  // TN: ((e^{2 pi d} + 1)/(e^{2 pi d} - 1))^n * (1 - prod(1 - mu_l e^{-pi d N_l}))
  Interval d = rhohat - rho;
  Interval e2d = exp_term(pi.mul_2exp(1) * d);
  Interval head = pow((e2d + one) / (e2d - one), static_cast<long>(n));
  std::vector<Interval> xs;
  for (int ax = 0; ax < n; ++ax)
    xs.push_back(dft_mu(N.N[ax], d) *
                 exp_term(-(pi * d * Interval::point(static_cast<long>(N.N[ax]), p))));
  Interval TN = head * one_minus_prod(xs);

  ErrorConstants out;
  out.rho = rho;
  out.rhohat = rhohat;
  out.N = N;
  out.S1 = S1;
  out.S2 = S2;
  out.TN = TN;
  out.CN = S1 + S2 + TN;
  return out;
}

Interval product_error_bound(const MatSeries<Interval>& a, const MatSeries<Interval>& b,
                             const ErrorConstants& cn) {
  Interval na = fourier_norm_matrix(a, cn.rhohat);
  Interval nb = fourier_norm_matrix(b, cn.rhohat);
  return cn.CN * na * nb;
}

InverseCertificate inverse_certificate(const MatSeries<Interval>& a,
                                       const MatSeries<Interval>& x, const ErrorConstants& cn) {
  const long p = cn.CN.prec();
  Interval nx = fourier_norm_matrix(x, cn.rhohat);
  Interval e = cn.CN * fourier_norm_matrix(a, cn.rhohat) * nx;
  InverseCertificate out;
  out.residual_norm = e;
  if (!(e.upper() < Real(p, 1.0)))
    throw NeumannFailure("inverse_certificate: residual norm not below one");
  out.correction = nx * e / (Interval::point(1L, p) - e);
  return out;
}

}  // namespace kam
