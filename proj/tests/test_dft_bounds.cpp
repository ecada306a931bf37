#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fourier/dft_bounds.hpp"

using namespace kam;

namespace {

Interval ipt(double x) { return Interval::point(x); }

// Truncated aliasing sum  sum_{m != 0} e^{-2 pi rhohat |k + N m|}  (n = 1).
double aliasing_sum(int k, int N, double rhohat, int terms = 400) {
  double s = 0.0;
  for (int m = -terms; m <= terms; ++m) {
    if (m == 0) continue;
    s += std::exp(-2.0 * M_PI * rhohat * std::abs(static_cast<double>(k) + static_cast<double>(N) * m));
  }
  return s;
}

}  // namespace

TEST_CASE("one-dimensional aliasing bound equals the closed form") {
  // odd grid, center mode
  const int N = 21;
  const double rhohat = 0.1;
  Interval bound = alias_coeff_bound({0}, ipt(rhohat), GridShape{{N}});
  // closed form e^{-2 pi rhohat N}/(1 - e^{-2 pi rhohat N}) (e^{2 pi rhohat k} + e^{-...}),
  // evaluated in interval arithmetic so the reference is itself an enclosure
  Interval twopirh = Interval::pi().mul_2exp(1) * ipt(rhohat);
  Interval eN = exp(-(twopirh * Interval::point(static_cast<long>(N))));
  Interval expect = eN / (Interval::point(1L) - eN) * Interval::point(2L);
  CHECK(bound.intersects(expect));
  CHECK(bound.upper().to_double() == doctest::Approx(expect.upper().to_double()).epsilon(1e-12));
  double expect_d = expect.mid().to_double();
  (void)expect_d;

  // k = 7
  Interval b7 = alias_coeff_bound({7}, ipt(rhohat), GridShape{{N}});
  double eNd = std::exp(-2.0 * M_PI * rhohat * N);
  double expect7 =
      eNd / (1.0 - eNd) * (std::exp(2.0 * M_PI * rhohat * 7) + std::exp(-2.0 * M_PI * rhohat * 7));
  CHECK(b7.upper().to_double() == doctest::Approx(expect7).epsilon(1e-12));
}

TEST_CASE("aliasing bound decays as the strip widens") {
  GridShape N{{32}};
  for (int k : {0, 3, 10}) {
    Interval b1 = alias_coeff_bound({k}, ipt(0.05), N);
    Interval b2 = alias_coeff_bound({k}, ipt(0.10), N);
    CHECK(b2.upper() < b1.upper());
  }
}

TEST_CASE("aliasing bound is met by the exact geometric-coefficient function") {
  // coefficients exactly e^{-2 pi rhohat |k|}: the aliasing error equals the
  // defining sum, which the closed form reproduces; twenty parameter combos
  for (int N : {8, 16, 32, 64}) {
    for (double rhohat : {0.03, 0.07, 0.12, 0.2, 0.35}) {
      for (int k : {0, 1, N / 4, N / 2 - 1, -N / 2}) {
        double actual = aliasing_sum(k, N, rhohat);
        Interval bound = alias_coeff_bound({k}, ipt(rhohat), GridShape{{N}});
        CHECK(actual <= bound.upper().to_double() * (1 + 1e-12));
        CHECK(actual >= bound.lower().to_double() * (1 - 1e-12));
      }
    }
  }
  {
  const int N = 16;
  const double rhohat = 0.07;
  // 2-D product structure
  double a2 = 0.0;
  const int N1 = 8, N2 = 4;
  for (int m1 = -60; m1 <= 60; ++m1)
    for (int m2 = -60; m2 <= 60; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      a2 += std::exp(-2.0 * M_PI * rhohat * (std::abs(1.0 + N1 * m1) + std::abs(-1.0 + N2 * m2)));
    }
  Interval b2 = alias_coeff_bound({1, -1}, ipt(rhohat), GridShape{{N1, N2}});
  CHECK(a2 <= b2.upper().to_double() * (1 + 1e-12));
  CHECK(a2 >= b2.lower().to_double() * (1 - 1e-10));
  }
}

TEST_CASE("aliasing bound rejects out-of-range indices") {
  CHECK_THROWS_AS(alias_coeff_bound({8}, ipt(0.1), GridShape{{16}}), IndexOutOfRange);
  CHECK_THROWS_AS(alias_coeff_bound({-9}, ipt(0.1), GridShape{{16}}), IndexOutOfRange);
}

TEST_CASE("approximation constant: odd grid closed form at rho = 0") {
  const int N = 21, M = 10;  // N = 2M + 1
  const double rhohat = 0.1;
  ErrorConstants ec = approx_error_constant(ipt(0.0), ipt(rhohat), GridShape{{N}});
  // exact simplification of the three-part sum at rho = 0 for odd N:
  // C_N = 4 e^{-2 pi rhohat M} / (e^{2 pi rhohat} - 1)
  double exact = 4.0 * std::exp(-2.0 * M_PI * rhohat * M) / (std::exp(2.0 * M_PI * rhohat) - 1.0);
  CHECK(ec.CN.upper().to_double() == doctest::Approx(exact).epsilon(1e-12));
  // the printed corollary form carries an extra 1/(1 - e^{-2 pi rhohat N}),
  // so it stays a (slightly looser) upper bound of the computed constant
  double printed = exact / (1.0 - std::exp(-2.0 * M_PI * rhohat * N));
  CHECK(ec.CN.upper().to_double() <= printed);
  CHECK(ec.S1.upper().to_double() >= 0.0);
  CHECK(ec.S2.upper().to_double() >= 0.0);
  CHECK(ec.TN.upper().to_double() >= 0.0);
}

TEST_CASE("approximation constant decays at the advertised rate in N") {
  const double rho = 0.01, rhohat = 0.2;
  for (int N : {16, 32, 64}) {
    ErrorConstants c1 = approx_error_constant(ipt(rho), ipt(rhohat), GridShape{{N}});
    ErrorConstants c2 = approx_error_constant(ipt(rho), ipt(rhohat), GridShape{{2 * N}});
    double gain = std::exp(-M_PI * (rhohat - rho) * N);
    CHECK(c2.CN.upper().to_double() <= c1.CN.upper().to_double() * gain * 10.0);
  }
}

TEST_CASE("approximation constant shrinks as the gap rhohat - rho grows") {
  GridShape N{{64}};
  double prev = 1e300;
  for (double gap : {0.02, 0.05, 0.1, 0.2, 0.4}) {
    double cur = approx_error_constant(ipt(0.01), ipt(0.01 + gap), N).CN.upper().to_double();
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("approximation constant rejects a degenerate strip pair") {
  CHECK_THROWS_AS(approx_error_constant(ipt(0.2), ipt(0.1), GridShape{{16}}), InvalidStrip);
  CHECK_THROWS_AS(approx_error_constant(ipt(0.1), ipt(0.1), GridShape{{16}}), InvalidStrip);
}

TEST_CASE("norm error bound holds for a geometric-coefficient function") {
  // f has coefficients e^{-2 pi rhop |k|} with rhop > rhohat, so it is
  // analytic past the outer strip and all sums are explicit.
  const int N = 16;
  const double rhop = 0.15, rhohat = 0.10;
  ErrorConstants ec = approx_error_constant(ipt(0.0), ipt(rhohat), GridShape{{N}});
  // actual ||f~ - f||_0 <= sum_{k in I_N} |f~_k - f_k| + sum_{k notin I_N} |f_k|
  double actual = 0.0;
  for (int k = -N / 2; k < N / 2; ++k) actual += aliasing_sum(k, N, rhop);
  for (int k = N / 2; k <= 4000; ++k)
    actual += 2.0 * std::exp(-2.0 * M_PI * rhop * k);  // +-k tails
  // ||f||_rhohat: positive coefficients peak on the imaginary boundary
  double norm = 1.0;
  for (int k = 1; k <= 4000; ++k)
    norm += 2.0 * std::exp(-2.0 * M_PI * (rhop - rhohat) * k);
  CHECK(actual <= ec.CN.upper().to_double() * norm);
}

TEST_CASE("inclusion-exclusion expansion agrees with the direct product") {
  for (double x1 : {1e-30, 1e-10, 1e-3, 1e-1}) {
    for (double x2 : {1e-28, 1e-12, 1e-2}) {
      Interval direct = Interval::point(1L) - (Interval::point(1L) - ipt(x1)) *
                                                  (Interval::point(1L) - ipt(x2));
      Interval expanded = one_minus_prod({ipt(x1), ipt(x2)});
      CHECK(expanded.intersects(direct));
      double rel = std::abs(expanded.mid().to_double() - (x1 + x2 - x1 * x2)) / (x1 + x2);
      CHECK(rel < 1e-15);
    }
  }
}

TEST_CASE("product bound: zero factor and constants") {
  const long p = default_precision();
  GridShape N{{16}};
  ErrorConstants ec = approx_error_constant(ipt(0.01), ipt(0.1), N);
  MatSeries<Interval> A, B;
  A.rows = A.cols = 1;
  B.rows = B.cols = 1;
  A.series = FourierSeries<Interval>(N, 1, p);
  B.series = FourierSeries<Interval>(N, 1, p);
  A.series.comps[0][0] = Complex<Interval>(ipt(3.0), ipt(0.0));
  CHECK(product_error_bound(A, B, ec).upper().to_double() == 0.0);
  B.series.comps[0][0] = Complex<Interval>(ipt(2.0), ipt(0.0));
  // constants multiply exactly on the grid; the bound is a valid (>0) slack
  CHECK(product_error_bound(A, B, ec).upper().to_double() >= 0.0);
}

TEST_CASE("product bound dominates the symbolically convolved truncation error") {
  // A, B trig polynomials with modes up to 3 on N = 8: the product has modes
  // up to 6, so grid multiplication aliases them back into the kept band.
  const int N = 8;
  const double rhohat = 0.1;
  std::vector<double> a(7, 0.0), b(7, 0.0);  // coefficients for k = -3..3, offset 3
  a[3 + 0] = 0.4; a[3 + 1] = 0.25; a[3 - 1] = 0.25; a[3 + 3] = 0.05; a[3 - 3] = 0.05;
  b[3 + 2] = 0.5; b[3 - 2] = 0.5; b[3 + 1] = -0.1; b[3 - 1] = -0.1;
  // symbolic convolution c_k, k = -6..6 (offset 6)
  std::vector<double> c(13, 0.0);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) c[6 + i + j] += a[3 + i] * b[3 + j];
  // error of grid multiplication: modes k outside I_8 fold onto k -+ 8
  double actual = 0.0;
  for (int k = -6; k <= 6; ++k) {
    if (k >= -4 && k < 4) continue;
    // the mode sits outside the kept band: it appears in the true product and
    // is also aliased onto k -+ 8 in the grid product
    actual += 2.0 * std::abs(c[6 + k]);
  }
  // norms
  auto fnorm = [&](const std::vector<double>& v, int off, double w) {
    double s = 0.0;
    for (int k = -3; k <= 3; ++k) s += std::abs(v[off + k]) * std::exp(2 * M_PI * w * std::abs(k));
    return s;
  };
  ErrorConstants ec = approx_error_constant(ipt(0.0), ipt(rhohat), GridShape{{N}});
  double bound = ec.CN.upper().to_double() * fnorm(a, 3, rhohat) * fnorm(b, 3, rhohat);
  CHECK(actual <= bound);
}

TEST_CASE("inverse certificate: identity and constant diagonal") {
  const long p = default_precision();
  GridShape N{{256}};
  ErrorConstants ec = approx_error_constant(ipt(0.01), ipt(0.2), N);
  MatSeries<Interval> A, X;
  A.rows = A.cols = X.rows = X.cols = 1;
  A.series = FourierSeries<Interval>(N, 1, p);
  X.series = FourierSeries<Interval>(N, 1, p);
  A.series.comps[0][0] = Complex<Interval>(ipt(2.0), ipt(0.0));
  X.series.comps[0][0] = Complex<Interval>(ipt(0.5), ipt(0.0));
  InverseCertificate cert = inverse_certificate(A, X, ec);
  // the bound sees only norms, so it is positive yet negligibly small here
  CHECK(cert.residual_norm.upper().to_double() < 1e-30);
  CHECK(cert.correction.upper().to_double() < 1e-30);
}

TEST_CASE("inverse certificate bounds the true inverse distance") {
  // A(theta) = 2 + 0.1 cos(2 pi theta), inverted on the grid
  const long p = default_precision();
  const int N = 16;
  GridShape shape{{N}};
  GridSampling<Interval> Ag(shape, 1, p);
  Interval twopi = Interval::pi(p).mul_2exp(1);
  for (long j = 0; j < N; ++j) {
    Interval th = Interval::point(j, p).mul_2exp(-4);
    Ag.comps[0][j] = ipt(2.0) + ipt(0.1) * cos(twopi * th);
  }
  GridSampling<Interval> Xg(shape, 1, p);
  for (long j = 0; j < N; ++j) Xg.comps[0][j] = Interval::point(1L, p) / Ag.comps[0][j];
  MatSeries<Interval> A, X;
  A.rows = A.cols = X.rows = X.cols = 1;
  A.series = fft_forward(Ag);
  X.series = fft_forward(Xg);
  ErrorConstants ec = approx_error_constant(ipt(0.0), ipt(0.1), shape);
  InverseCertificate cert = inverse_certificate(A, X, ec);
  CHECK(cert.residual_norm.upper().to_double() < 1.0);

  // dense real sampling of |1/A - X~|
  double worst = 0.0;
  for (int s = 0; s < 512; ++s) {
    double th = s / 512.0;
    double Aval = 2.0 + 0.1 * std::cos(2 * M_PI * th);
    std::complex<double> Xval = 0.0;
    for (long i = 0; i < N; ++i) {
      int k = GridShape::freq(static_cast<int>(i), N);
      std::complex<double> coef(X.series.comps[0][i].re.mid().to_double(),
                                X.series.comps[0][i].im.mid().to_double());
      Xval += coef * std::exp(std::complex<double>(0.0, 2 * M_PI * k * th));
    }
    worst = std::max(worst, std::abs(1.0 / Aval - Xval));
  }
  CHECK(worst <= cert.correction.upper().to_double());
}

TEST_CASE("neumann failure surfaces when the residual reaches one") {
  const long p = default_precision();
  GridShape N{{8}};
  ErrorConstants ec = approx_error_constant(ipt(0.01), ipt(0.011), N);  // huge constant
  MatSeries<Interval> A, X;
  A.rows = A.cols = X.rows = X.cols = 1;
  A.series = FourierSeries<Interval>(N, 1, p);
  X.series = FourierSeries<Interval>(N, 1, p);
  A.series.comps[0][0] = Complex<Interval>(ipt(50.0), ipt(0.0));
  X.series.comps[0][0] = Complex<Interval>(ipt(50.0), ipt(0.0));
  CHECK_THROWS_AS(inverse_certificate(A, X, ec), NeumannFailure);
}
