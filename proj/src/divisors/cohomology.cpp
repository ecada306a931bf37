#include "divisors/cohomology.hpp"

namespace kam {

FourierSeries<Real> solve_cohomological_float(const FourierSeries<Real>& v,
                                              const std::vector<Real>& omega) {
  if (static_cast<int>(omega.size()) != v.shape.n())
    throw ShapeMismatch("solve_cohomological_float: omega dimension mismatch");
  const long p = v.prec;
  FourierSeries<Real> u(v.shape, v.m, p);
  u.real_symmetric = v.real_symmetric;
  Real pi = Real::pi(p);
  Real one(p, 1.0);
  Real tiny = Real::from_string("1e-14", p);
  const long total = v.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = v.shape.unflatten(i);
    bool is_zero_mode = true;
    Real dot(p, 0.0);
    for (int ax = 0; ax < v.shape.n(); ++ax) {
      int k = GridShape::freq(j[ax], v.shape.N[ax]);
      if (k != 0) {
        is_zero_mode = false;
        dot += Real::from_long(k, p) * omega[ax];
      }
    }
    if (is_zero_mode) continue;  // average removed
    // divisor d = 1 - e^{2 pi i theta}, theta = k.omega reduced mod 1
    Real red = dot - round_nearest(dot.mul_2exp(-1)).mul_2exp(1);
    Real ang = pi * red;  // in (-2 pi, 2 pi)
    Real dre = one - cos(ang.mul_2exp(1));
    Real dim = -sin(ang.mul_2exp(1));
    Real mag2 = dre * dre + dim * dim;
    if (sqrt(mag2) < tiny)
      throw NearResonance("divisor below 1e-14 at a truncated mode");
    for (int c = 0; c < v.m; ++c) {
      const Complex<Real>& z = v.comps[c][i];
      // z / d = z * conj(d) / |d|^2
      u.comps[c][i] = Complex<Real>((z.re * dre + z.im * dim) / mag2,
                                    (z.im * dre - z.re * dim) / mag2);
    }
  }
  return u;
}

}  // namespace kam
