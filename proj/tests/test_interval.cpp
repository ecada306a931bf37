#include <doctest.h>

#include <cmath>
#include <random>

#include "prec/interval.hpp"
#include "prec/mat.hpp"

using namespace kam;

namespace {

Interval rand_interval(std::mt19937& rng, double lo = -10.0, double hi = 10.0,
                       double max_width = 1.0) {
  std::uniform_real_distribution<double> mid(lo, hi), wid(0.0, max_width);
  double m = mid(rng), w = wid(rng);
  return Interval::bounds(m - w / 2, m + w / 2);
}

double rand_member(std::mt19937& rng, const Interval& x) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = x.lo_d(), b = x.hi_d();
  return a + (b - a) * u(rng);
}

}  // namespace

TEST_CASE("interval endpoint arithmetic on exact cases") {
  Interval a = Interval::bounds(1.0, 2.0);
  Interval b = Interval::bounds(3.0, 4.0);
  Interval s = a + b;
  CHECK(s.lower().to_double() == 4.0);
  CHECK(s.upper().to_double() == 6.0);

  Interval c = Interval::bounds(-1.0, 2.0) * Interval::bounds(-3.0, 1.0);
  CHECK(c.lower().to_double() == -6.0);
  CHECK(c.upper().to_double() == 3.0);

  Interval r = Interval::point(1.0) / Interval::bounds(2.0, 4.0);
  CHECK(r.lower().to_double() == 0.25);
  CHECK(r.upper().to_double() == 0.5);
}

TEST_CASE("division by an interval containing zero is rejected") {
  CHECK_THROWS_AS(Interval::point(1.0) / Interval::bounds(-1.0, 1.0), DivisionByZeroInterval);
}

TEST_CASE("construction rejects NaN and inverted endpoints") {
  CHECK_THROWS(Interval::bounds(2.0, 1.0));
  CHECK_THROWS(Interval::bounds(std::nan(""), 1.0));
}

TEST_CASE("cosh of the zero point encloses one tightly") {
  Interval c = cosh(Interval::point(0.0));
  CHECK(c.contains(1.0));
  CHECK((c.upper() - c.lower()).to_double() <= std::ldexp(2.0, -250));
}

TEST_CASE("sin on the first quadrant covers [0, 1]") {
  Interval halfpi = Interval::pi().mul_2exp(-1);
  Interval s = sin(Interval::bounds(Real(267, 0.0), halfpi.upper()));
  CHECK(s.lower().to_double() <= 0.0);
  CHECK(s.upper().to_double() >= 1.0);
  CHECK(s.upper().to_double() == 1.0);
}

TEST_CASE("exp enclosure against dense high-precision sampling") {
  Interval x = Interval::bounds(0.0, 1.0);
  Interval e = exp(x);
  CHECK(e.lower().to_double() <= 1.0);
  CHECK(e.upper().to_double() >= std::exp(1.0));
  // width <= (e - 1) + 1e-20 at >= 128 bits, checked in extended precision
  Real w = e.upper() - e.lower();
  Real limit = exp(Real::from_double(1.0)) - Real::from_double(1.0) + Real::from_string("1e-20");
  CHECK(w <= limit);
  for (int i = 0; i <= 100; ++i) {
    double t = i / 100.0;
    // double-precision samples sit within one ulp of the true value
    Real v = Real::from_double(std::exp(t));
    CHECK(v >= e.lower() - Real::from_string("1e-15"));
    CHECK(v <= e.upper() + Real::from_string("1e-15"));
  }
}

TEST_CASE("containment fuzzing: results enclose pointwise evaluations") {
  std::mt19937 rng(20240811);
  const long P = 80;  // evaluate members in double, enclosures at high precision
  (void)P;
  for (int trial = 0; trial < 5000; ++trial) {
    Interval a = rand_interval(rng), b = rand_interval(rng);
    double av = rand_member(rng, a), bv = rand_member(rng, b);
    Interval s = a + b;
    CHECK(s.lo_d() <= av + bv);
    CHECK(s.hi_d() >= av + bv);
    Interval d = a - b;
    CHECK(d.lo_d() <= av - bv);
    CHECK(d.hi_d() >= av - bv);
    Interval m = a * b;
    CHECK(m.lo_d() <= av * bv);
    CHECK(m.hi_d() >= av * bv);
    if (!b.contains_zero()) {
      Interval q = a / b;
      CHECK(q.lo_d() <= av / bv);
      CHECK(q.hi_d() >= av / bv);
    }
    Interval es = exp(Interval::bounds(a.lo_d() / 10, a.hi_d() / 10));
    double ev = std::exp(av / 10);
    CHECK(es.lo_d() <= ev * (1 + 1e-13));
    CHECK(es.hi_d() >= ev * (1 - 1e-13));
    Interval ss = sin(a);
    CHECK(ss.lo_d() <= std::sin(av) + 1e-13);
    CHECK(ss.hi_d() >= std::sin(av) - 1e-13);
    Interval cs = cos(a);
    CHECK(cs.lo_d() <= std::cos(av) + 1e-13);
    CHECK(cs.hi_d() >= std::cos(av) - 1e-13);
    Interval hs = cosh(Interval::bounds(a.lo_d() / 4, a.hi_d() / 4));
    double hv = std::cosh(av / 4);
    CHECK(hs.lo_d() <= hv * (1 + 1e-13));
    CHECK(hs.hi_d() >= hv * (1 - 1e-13));
  }
}

TEST_CASE("inclusion isotonicity under randomized nesting") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    Interval big_a = rand_interval(rng), big_b = rand_interval(rng);
    // nested sub-intervals
    double al = rand_member(rng, big_a), ah = rand_member(rng, big_a);
    double bl = rand_member(rng, big_b), bh = rand_member(rng, big_b);
    Interval sub_a = Interval::bounds(std::min(al, ah), std::max(al, ah));
    Interval sub_b = Interval::bounds(std::min(bl, bh), std::max(bl, bh));

    CHECK((big_a + big_b).contains(sub_a + sub_b));
    CHECK((big_a - big_b).contains(sub_a - sub_b));
    CHECK((big_a * big_b).contains(sub_a * sub_b));
    if (!big_b.contains_zero()) CHECK((big_a / big_b).contains(sub_a / sub_b));
    CHECK(sin(big_a).contains(sin(sub_a)));
    CHECK(cos(big_a).contains(cos(sub_a)));
    CHECK(cosh(big_a).contains(cosh(sub_a)));
    CHECK(exp(big_a).contains(exp(sub_a)));
  }
}

TEST_CASE("precision monotonicity: higher precision nests inside lower") {
  for (double x : {0.1, 0.7, 2.5, 9.9}) {
    Interval lo_prec = exp(sin(Interval::point(x, 64)) + Interval::pi(64));
    Interval hi_prec = exp(sin(Interval::point(x, 256)) + Interval::pi(256));
    CHECK(lo_prec.contains(hi_prec));
  }
}

TEST_CASE("matrix inverse: identity and diagonal") {
  IMat id = IMat::identity(3);
  IMat inv = id.inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(inv(i, j).contains(i == j ? 1.0 : 0.0));

  IMat d(2, 2);
  d(0, 0) = Interval::point(2.0);
  d(1, 1) = Interval::point(4.0);
  IMat dinv = d.inverse();
  CHECK(dinv(0, 0).contains(0.5));
  CHECK(dinv(1, 1).contains(0.25));
  CHECK(dinv(0, 1).contains(0.0));
}

TEST_CASE("matrix inverse encloses the true inverse: containment oracle") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    for (int n : {2, 3, 4}) {
      IMat m(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          m(i, j) = Interval::point(u(rng) + (i == j ? 3.0 : 0.0));  // diagonally dominant
      IMat inv = m.inverse();
      IMat prod = m * inv;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(prod(i, j).contains(i == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("matrix inverse flags pivots touching zero") {
  IMat m(2, 2);
  m(0, 0) = Interval::bounds(-0.5, 0.5);
  m(0, 1) = Interval::bounds(-0.5, 0.5);
  m(1, 0) = Interval::bounds(-0.5, 0.5);
  m(1, 1) = Interval::bounds(-0.5, 0.5);
  CHECK_THROWS_AS(m.inverse(), PossiblySingular);
}

TEST_CASE("row-sum norm") {
  IMat m(2, 2);
  m(0, 0) = Interval::point(1.0);
  m(0, 1) = Interval::point(-2.0);
  m(1, 0) = Interval::point(0.0);
  m(1, 1) = Interval::point(3.0);
  CHECK(m.rowsum_norm().contains(3.0));
  CHECK(m.rowsum_norm().upper().to_double() >= 3.0);

  IMat z(3, 4);
  CHECK(z.rowsum_norm().upper().to_double() == 0.0);

  // width-0.1 entries: the norm upper end dominates sampled member norms
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0), w(0.0, 0.1);
  IMat q(2, 2);
  double sample_norm = 0.0;
  double centers[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      centers[i][j] = u(rng);
      q(i, j) = Interval::bounds(centers[i][j] - 0.05, centers[i][j] + 0.05);
    }
  for (int s = 0; s < 100; ++s) {
    double r0 = 0, r1 = 0;
    for (int j = 0; j < 2; ++j) {
      r0 += std::abs(centers[0][j] + (w(rng) - 0.05));
      r1 += std::abs(centers[1][j] + (w(rng) - 0.05));
    }
    sample_norm = std::max({sample_norm, r0, r1});
  }
  CHECK(q.rowsum_norm().upper().to_double() >= sample_norm);
}

TEST_CASE("decimal round trip: parsing yields tight enclosures") {
  Interval x = Interval::from_string("0.1");
  CHECK(x.contains(Real::from_string("0.1", 400)));
  CHECK((x.upper() - x.lower()).to_double() <= std::ldexp(1.0, -260));
  // exact decimals parse to points
  Interval y = Interval::from_string("0.5");
  CHECK(y.is_point());
}
