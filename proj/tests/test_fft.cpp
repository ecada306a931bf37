#include <doctest.h>

#include <cmath>
#include <random>

#include "fourier/fft.hpp"

using namespace kam;

namespace {

GridShape shape1(int N) { return GridShape{{N}}; }
GridShape shape2(int N1, int N2) { return GridShape{{N1, N2}}; }

GridSampling<Interval> random_sampling(const GridShape& s, int m, std::mt19937& rng) {
  GridSampling<Interval> g(s, m, default_precision());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < m; ++c)
    for (long i = 0; i < s.total(); ++i) g.comps[c][i] = Interval::point(u(rng));
  return g;
}

}  // namespace

TEST_CASE("forward transform of a constant sampling") {
  GridSampling<Interval> g(shape1(8), 1, default_precision());
  for (long i = 0; i < 8; ++i) g.comps[0][i] = Interval::point(2.5);
  auto f = fft_forward(g);
  CHECK(f.comps[0][0].re.contains(2.5));
  for (long i = 1; i < 8; ++i) {
    CHECK(f.comps[0][i].re.contains(0.0));
    CHECK(f.comps[0][i].im.contains(0.0));
  }
}

TEST_CASE("cos(2 pi theta) on N=8 gives half-weight modes +-1") {
  const long p = default_precision();
  GridSampling<Interval> g(shape1(8), 1, p);
  Interval twopi = Interval::pi(p).mul_2exp(1);
  for (long j = 0; j < 8; ++j)
    g.comps[0][j] = cos(twopi * Interval::point(j, p).mul_2exp(-3));
  auto f = fft_forward(g);
  CHECK(f.comps[0][1].re.contains(0.5));   // k = +1
  CHECK(f.comps[0][7].re.contains(0.5));   // k = -1
  CHECK(f.comps[0][0].re.contains(0.0));
  CHECK(f.comps[0][2].re.contains(0.0));
  CHECK(f.comps[0][1].im.contains(0.0));
}

TEST_CASE("interval FFT encloses the naive transform: 1-D and 2-D") {
  // the oracle runs at triple precision, so its enclosure is far tighter
  // than the FFT's and sits around the same true value
  std::mt19937 rng(31);
  auto tighten = [](const GridSampling<Interval>& g) {
    GridSampling<Interval> h(g.shape, g.m, 3 * g.prec);
    for (int c = 0; c < g.m; ++c)
      for (long i = 0; i < g.shape.total(); ++i)
        h.comps[c][i] = Interval::bounds(g.comps[c][i].lower(), g.comps[c][i].upper(), 3 * g.prec);
    return h;
  };
  {
    auto g = random_sampling(shape1(16), 2, rng);
    auto fast = fft_forward(g);
    auto slow = dft_forward_naive(tighten(g));
    for (int c = 0; c < 2; ++c)
      for (long i = 0; i < 16; ++i) {
        // both enclose the true coefficient, so they must overlap; endpoint
        // interleaving at the oracle's own width scale is legitimate, so the
        // containment check allows that much slack
        const auto& fre = fast.comps[c][i].re;
        const auto& fim = fast.comps[c][i].im;
        const auto& sre = slow.comps[c][i].re;
        const auto& sim = slow.comps[c][i].im;
        CHECK(fre.intersects(sre));
        CHECK(fim.intersects(sim));
        Interval slack = Interval::bounds(-1e-200, 1e-200);
        CHECK((fre + slack).contains(sre));
        CHECK((fim + slack).contains(sim));
      }
  }
  {
    auto g = random_sampling(shape2(8, 4), 1, rng);
    auto fast = fft_forward(g);
    auto slow = dft_forward_naive(tighten(g));
    for (long i = 0; i < 32; ++i) {
      const auto& fre = fast.comps[0][i].re;
      const auto& fim = fast.comps[0][i].im;
      const auto& sre = slow.comps[0][i].re;
      const auto& sim = slow.comps[0][i].im;
      CHECK(fre.intersects(sre));
      CHECK(fim.intersects(sim));
      Interval slack = Interval::bounds(-1e-200, 1e-200);
      CHECK((fre + slack).contains(sre));
      CHECK((fim + slack).contains(sim));
    }
  }
}

TEST_CASE("single mode backward transform is the unit oscillation") {
  const long p = default_precision();
  FourierSeries<Interval> f(shape1(8), 1, p);
  f.comps[0][1] = Complex<Interval>(Interval::point(1.0), Interval::point(0.0));
  auto z = fft_backward_complex(f);
  Interval twopi = Interval::pi(p).mul_2exp(1);
  for (long j = 0; j < 8; ++j) {
    Interval ang = twopi * Interval::point(j, p).mul_2exp(-3);
    CHECK(z[0][j].re.intersects(cos(ang)));
    CHECK(z[0][j].im.intersects(sin(ang)));
  }
}

TEST_CASE("round trip contains the original data") {
  std::mt19937 rng(77);
  auto g = random_sampling(shape1(32), 2, rng);
  auto back = fft_backward(fft_forward(g));
  for (int c = 0; c < 2; ++c)
    for (long i = 0; i < 32; ++i) CHECK(back.comps[c][i].contains(g.comps[c][i].mid()));
}

TEST_CASE("zero series gives zero sampling") {
  FourierSeries<Interval> f(shape1(8), 1, default_precision());
  auto g = fft_backward(f);
  for (long i = 0; i < 8; ++i) {
    CHECK(g.comps[0][i].contains(0.0));
    CHECK(g.comps[0][i].mag().to_double() == 0.0);
  }
}

TEST_CASE("trig polynomial supported in the kept band is recovered") {
  // coefficients of sin(2 pi theta) + 0.25 cos(4 pi theta), N = 16
  const long p = default_precision();
  GridSampling<Real> g(shape1(16), 1, p);
  Real twopi = Real::pi(p).mul_2exp(1);
  for (long j = 0; j < 16; ++j) {
    Real th = Real::from_long(j, p).mul_2exp(-4);
    g.comps[0][j] = sin(twopi * th) + Real::from_double(0.25, p) * cos(twopi * th.mul_2exp(1));
  }
  auto f = fft_forward(g);
  // k=1: -i/2, k=2: 1/8
  CHECK(std::abs(f.comps[0][1].im.to_double() + 0.5) < 1e-60);
  CHECK(std::abs(f.comps[0][2].re.to_double() - 0.125) < 1e-60);
  CHECK(std::abs(f.comps[0][0].re.to_double()) < 1e-60);
}

TEST_CASE("derivative: sin goes to 2 pi cos, constants die") {
  const long p = default_precision();
  GridSampling<Real> g(shape1(32), 1, p);
  Real twopi = Real::pi(p).mul_2exp(1);
  for (long j = 0; j < 32; ++j) {
    Real th = Real::from_long(j, p).mul_2exp(-5);
    g.comps[0][j] = sin(twopi * th) + Real(p, 3.0);
  }
  auto d = series_derivative(fft_forward(g), 0);
  auto back = fft_backward(d);
  for (long j = 0; j < 32; ++j) {
    Real th = Real::from_long(j, p).mul_2exp(-5);
    Real expect = twopi * cos(twopi * th);
    CHECK(std::abs((back.comps[0][j] - expect).to_double()) < 1e-60);
  }
}

TEST_CASE("derivative matches finite differences on a random trig polynomial") {
  const long p = default_precision();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FourierSeries<Real> f(shape1(16), 1, p);
  // random real trig polynomial with modes |k| <= 3
  for (int k = 1; k <= 3; ++k) {
    double a = u(rng), b = u(rng);
    f.comps[0][k] = Complex<Real>(Real::from_double(a / 2, p), Real::from_double(-b / 2, p));
    f.comps[0][16 - k] = Complex<Real>(Real::from_double(a / 2, p), Real::from_double(b / 2, p));
  }
  auto fd = series_derivative(f, 0);
  // evaluate both at theta = 0.3 via direct summation vs central difference
  auto eval = [&](const FourierSeries<Real>& s, double theta) {
    Real acc(p, 0.0);
    Real twopi = Real::pi(p).mul_2exp(1);
    for (long i = 0; i < 16; ++i) {
      int k = GridShape::freq(static_cast<int>(i), 16);
      Real ang = twopi * Real::from_double(k * theta, p);
      acc += s.comps[0][i].re * cos(ang) - s.comps[0][i].im * sin(ang);
    }
    return acc.to_double();
  };
  double h = 1e-6;
  double fd_num = (eval(f, 0.3 + h) - eval(f, 0.3 - h)) / (2 * h);
  CHECK(std::abs(eval(fd, 0.3) - fd_num) < 1e-6);
}

TEST_CASE("shift by zero is the identity; quarter shift of mode one is i") {
  const long p = default_precision();
  FourierSeries<Interval> f(shape1(8), 1, p);
  f.comps[0][1] = Complex<Interval>(Interval::point(1.0), Interval::point(0.0));
  auto same = series_shift(f, {Interval::point(0.0)});
  CHECK(same.comps[0][1].re.contains(1.0));
  CHECK(same.comps[0][1].im.contains(0.0));

  auto quarter = series_shift(f, {Interval::point(0.25)});
  CHECK(quarter.comps[0][1].re.contains(0.0));
  CHECK(quarter.comps[0][1].im.contains(1.0));
}

TEST_CASE("shifted series evaluates like the series at shifted points") {
  const long p = default_precision();
  std::mt19937 rng(11);
  auto g = random_sampling(shape1(16), 1, rng);
  auto f = fft_forward(g);
  double w = 3.0 / 16.0;  // shift by 3 grid cells so targets line up with grid points
  auto shifted = fft_backward(series_shift(f, {Interval::point(w)}));
  auto plain = fft_backward(f);
  for (long j = 0; j < 16; ++j) {
    long tgt = (j + 3) % 16;
    CHECK(shifted.comps[0][j].intersects(plain.comps[0][tgt]));
  }
}

TEST_CASE("fourier norms of simple series") {
  const long p = default_precision();
  FourierSeries<Interval> f(shape1(8), 1, p);
  f.comps[0][0] = Complex<Interval>(Interval::point(1.0), Interval::point(0.0));
  CHECK(fourier_norm_component(f, 0, Interval::point(0.7)).contains(1.0));

  FourierSeries<Interval> g(shape1(8), 1, p);
  g.comps[0][1] = Complex<Interval>(Interval::point(0.5), Interval::point(0.0));
  g.comps[0][7] = Complex<Interval>(Interval::point(0.5), Interval::point(0.0));
  CHECK(fourier_norm_component(g, 0, Interval::point(0.0)).contains(1.0));
}

TEST_CASE("geometric coefficients match the closed-form weighted sum") {
  // f_k = e^{-2 pi rhohat |k|}, truncated; norm at rho < rhohat has the exact
  // value sum_k e^{-2 pi (rhohat - rho) |k|} over the kept modes.
  const long p = default_precision();
  const int N = 32;
  double rhohat = 0.05, rho = 0.02;
  FourierSeries<Interval> f(shape1(N), 1, p);
  Interval twopi = Interval::pi(p).mul_2exp(1);
  for (long i = 0; i < N; ++i) {
    int k = GridShape::freq(static_cast<int>(i), N);
    f.comps[0][i] = Complex<Interval>(
        exp(-(twopi * Interval::point(rhohat) * Interval::point(std::labs(k)))),
        Interval::point(0.0));
  }
  Interval norm = fourier_norm_component(f, 0, Interval::point(rho));
  Interval expect = Interval::point(0.0);
  for (long i = 0; i < N; ++i) {
    int k = GridShape::freq(static_cast<int>(i), N);
    expect += exp(-(twopi * Interval::point(rhohat - rho) * Interval::point(std::labs(k))));
  }
  CHECK(norm.intersects(expect));
  CHECK(norm.upper().to_double() == doctest::Approx(expect.upper().to_double()).epsilon(1e-30));
}
