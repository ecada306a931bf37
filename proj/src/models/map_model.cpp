#include "models/map_model.hpp"

#include <cmath>

namespace kam {

MapModel MapModel::create(const std::string& name, double eps, double l1, double l2) {
  if (name == "standard") return create(MapKind::Standard, eps, l1, l2);
  if (name == "nontwist") return create(MapKind::NonTwist, eps, l1, l2);
  if (name == "froeschle") return create(MapKind::Froeschle, eps, l1, l2);
  throw std::invalid_argument("unknown map model '" + name + "'");
}

MapModel MapModel::create(MapKind kind, double eps, double l1, double l2) {
  int n = (kind == MapKind::Froeschle) ? 2 : 1;
  return MapModel(kind, n, eps, l1, l2);
}

std::string MapModel::name() const {
  switch (kind_) {
    case MapKind::Standard: return "standard";
    case MapKind::NonTwist: return "nontwist";
    case MapKind::Froeschle: return "froeschle";
  }
  return "?";
}

template <typename T>
std::vector<T> MapModel::eval_Fp(const std::vector<T>& z, long prec) const {
  using S = ScalarTraits<T>;
  T twopi = S::pi(prec).mul_2exp(1);
  T eps = S::from_double(eps_, prec);
  switch (kind_) {
    case MapKind::Standard: {
      T ybar = z[1] - (eps / twopi) * sin(twopi * z[0]);
      return {ybar, ybar};
    }
    case MapKind::NonTwist: {
      T ybar = z[1] - (eps / twopi) * sin(twopi * z[0]);
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      return {(ybar + l1) * (ybar + l2), ybar};
    }
    case MapKind::Froeschle: {
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      T sc = sin(twopi * (z[0] + z[1]));
      T y1 = z[2] - (l1 / twopi) * sin(twopi * z[0]) - (eps / twopi) * sc;
      T y2 = z[3] - (l2 / twopi) * sin(twopi * z[1]) - (eps / twopi) * sc;
      return {y1, y2, y1, y2};
    }
  }
  throw std::logic_error("unreachable");
}

template <typename T>
Mat<T> MapModel::eval_DF(const std::vector<T>& z, long prec) const {
  using S = ScalarTraits<T>;
  T twopi = S::pi(prec).mul_2exp(1);
  T one = S::from_long(1, prec), zero = S::from_long(0, prec);
  T eps = S::from_double(eps_, prec);
  Mat<T> m(dim(), dim(), prec);
  switch (kind_) {
    case MapKind::Standard: {
      T yx = -(eps * cos(twopi * z[0]));
      m(0, 0) = one + yx; m(0, 1) = one;
      m(1, 0) = yx;       m(1, 1) = one;
      return m;
    }
    case MapKind::NonTwist: {
      T yx = -(eps * cos(twopi * z[0]));
      T ybar = z[1] - (eps / twopi) * sin(twopi * z[0]);
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      T q = ybar.mul_2exp(1) + l1 + l2;  // derivative of (y+l1)(y+l2)
      m(0, 0) = one + q * yx; m(0, 1) = q;
      m(1, 0) = yx;           m(1, 1) = one;
      return m;
    }
    case MapKind::Froeschle: {
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      T cc = cos(twopi * (z[0] + z[1]));
      T y1x1 = -(l1 * cos(twopi * z[0])) - eps * cc;
      T y1x2 = -(eps * cc);
      T y2x1 = -(eps * cc);
      T y2x2 = -(l2 * cos(twopi * z[1])) - eps * cc;
      // rows: xbar1, xbar2, ybar1, ybar2
      m(0, 0) = one + y1x1; m(0, 1) = y1x2; m(0, 2) = one;  m(0, 3) = zero;
      m(1, 0) = y2x1;       m(1, 1) = one + y2x2; m(1, 2) = zero; m(1, 3) = one;
      m(2, 0) = y1x1;       m(2, 1) = y1x2; m(2, 2) = one;  m(2, 3) = zero;
      m(3, 0) = y2x1;       m(3, 1) = y2x2; m(3, 2) = zero; m(3, 3) = one;
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

template <typename T>
std::vector<Mat<T>> MapModel::eval_D2F(const std::vector<T>& z, long prec) const {
  using S = ScalarTraits<T>;
  T twopi = S::pi(prec).mul_2exp(1);
  T eps = S::from_double(eps_, prec);
  std::vector<Mat<T>> d2(dim(), Mat<T>(dim(), dim(), prec));
  switch (kind_) {
    case MapKind::Standard: {
      T yxx = twopi * eps * sin(twopi * z[0]);
      d2[0](0, 0) = yxx;
      d2[1](0, 0) = yxx;
      return d2;
    }
    case MapKind::NonTwist: {
      T yx = -(eps * cos(twopi * z[0]));
      T yxx = twopi * eps * sin(twopi * z[0]);
      T ybar = z[1] - (eps / twopi) * sin(twopi * z[0]);
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      T q = ybar.mul_2exp(1) + l1 + l2;
      T two = S::from_long(2, prec);
      d2[0](0, 0) = q * yxx + two * yx * yx;
      d2[0](0, 1) = yx.mul_2exp(1);
      d2[0](1, 0) = yx.mul_2exp(1);
      d2[0](1, 1) = two;
      d2[1](0, 0) = yxx;
      return d2;
    }
    case MapKind::Froeschle: {
      T l1 = S::from_double(lambda1_, prec), l2 = S::from_double(lambda2_, prec);
      T s1 = twopi * l1 * sin(twopi * z[0]);
      T s2 = twopi * l2 * sin(twopi * z[1]);
      T sc = twopi * eps * sin(twopi * (z[0] + z[1]));
      for (int i : {0, 2}) {  // xbar1 and ybar1 share second derivatives
        d2[i](0, 0) = s1 + sc;
        d2[i](0, 1) = sc;
        d2[i](1, 0) = sc;
        d2[i](1, 1) = sc;
      }
      for (int i : {1, 3}) {
        d2[i](0, 0) = sc;
        d2[i](0, 1) = sc;
        d2[i](1, 0) = sc;
        d2[i](1, 1) = s2 + sc;
      }
      return d2;
    }
  }
  throw std::logic_error("unreachable");
}

template <typename T>
Mat<T> MapModel::omega0(long prec) const {
  using S = ScalarTraits<T>;
  Mat<T> m(dim(), dim(), prec);
  T one = S::from_long(1, prec);
  for (int i = 0; i < n_; ++i) {
    m(i, n_ + i) = -one;
    m(n_ + i, i) = one;
  }
  return m;
}

GlobalBounds MapModel::global_bounds(const DomainBox& box, long prec) const {
  GlobalBounds g;
  Interval one = Interval::point(1L, prec);
  Interval two = Interval::point(2L, prec);
  Interval twopi = Interval::pi(prec).mul_2exp(1);
  Interval eps = abs(Interval::point(eps_, prec));
  g.c_Omega = one;
  g.c_Omega_hat = one;
  g.c_DOmega = Interval::point(0L, prec);
  g.c_Da = one;
  g.c_D2a = Interval::point(0L, prec);
  switch (kind_) {
    case MapKind::Standard: {
      Interval ch = cosh(twopi * box.r[0]);
      Interval ch_hat = cosh(twopi * box.r_hat[0]);
      g.c_DF = two + eps * ch;
      g.c_D2F = twopi * eps * ch;
      g.c_Fp_hat = box.r_hat[1] + (eps / twopi) * ch_hat;
      return g;
    }
    case MapKind::NonTwist: {
      Interval l1 = abs(Interval::point(lambda1_, prec));
      Interval l2 = abs(Interval::point(lambda2_, prec));
      Interval l12 = abs(Interval::point(lambda1_, prec) + Interval::point(lambda2_, prec));
      Interval ch = cosh(twopi * box.r[0]);
      Interval ybar = box.r[1] + (eps / twopi) * ch;
      Interval ybar_x = eps * ch;
      Interval ybar_xx = twopi * eps * ch;
      g.c_DF = imax(one + ybar_x, one + (ybar.mul_2exp(1) + l12) * (one + ybar_x));
      g.c_D2F = imax(ybar_xx, two + ybar_x.mul_2exp(1) + pow(ybar_x, 2L).mul_2exp(1) +
                                  (ybar.mul_2exp(1) + l12) * ybar_xx);
      Interval ch_hat = cosh(twopi * box.r_hat[0]);
      Interval base = box.r_hat[1] + eps * ch_hat;
      g.c_Fp_hat = imax(base, (base + l1) * (base + l2));
      return g;
    }
    case MapKind::Froeschle: {
      Interval l1 = abs(Interval::point(lambda1_, prec));
      Interval l2 = abs(Interval::point(lambda2_, prec));
      Interval c1 = cosh(twopi * box.r[0]);
      Interval c2 = cosh(twopi * box.r[1]);
      Interval c3 = cosh(twopi * (box.r[0] + box.r[1]));
      g.c_DF = imax(two + l1 * c1 + (eps * c3).mul_2exp(1),
                    two + l2 * c2 + (eps * c3).mul_2exp(1));
      g.c_D2F = imax(twopi * l1 * c1 + (twopi * eps * c3).mul_2exp(1),
                     twopi * l2 * c2 + (twopi * eps * c3).mul_2exp(1));
      Interval h1 = cosh(twopi * box.r_hat[0]);
      Interval h2 = cosh(twopi * box.r_hat[1]);
      Interval h3 = cosh(twopi * (box.r_hat[0] + box.r_hat[1]));
      g.c_Fp_hat = imax(box.r_hat[2] + (l1 / twopi) * h1 + (eps / twopi) * h3,
                        box.r_hat[3] + (l2 / twopi) * h2 + (eps / twopi) * h3);
      return g;
    }
  }
  throw std::logic_error("unreachable");
}

#define KAM_MODEL_INSTANTIATE(T)                                                         \
  template std::vector<T> MapModel::eval_Fp<T>(const std::vector<T>&, long) const;       \
  template Mat<T> MapModel::eval_DF<T>(const std::vector<T>&, long) const;               \
  template std::vector<Mat<T>> MapModel::eval_D2F<T>(const std::vector<T>&, long) const; \
  template Mat<T> MapModel::omega0<T>(long) const;

KAM_MODEL_INSTANTIATE(Real)
KAM_MODEL_INSTANTIATE(Interval)
#undef KAM_MODEL_INSTANTIATE

}  // namespace kam
