#include "solver/torus.hpp"

#include <fstream>
#include <sstream>

namespace kam {

Torus<Real> integrable_seed(const MapModel& model, const std::vector<Real>& omega,
                            const GridShape& shape, long prec, int branch) {
  const int n = model.n();
  GridSampling<Real> g(shape, 2 * n, prec);
  std::vector<Real> y0(n, Real(prec, 0.0));
  switch (model.kind()) {
    case MapKind::Standard:
      y0[0] = omega[0];
      break;
    case MapKind::NonTwist: {
      // (y + l1)(y + l2) = omega, the two roots select the two circles
      Real l1 = Real::from_double(model.lambda1(), prec);
      Real l2 = Real::from_double(model.lambda2(), prec);
      Real disc = (l1 - l2) * (l1 - l2) + omega[0].mul_2exp(2);
      if (disc < Real(prec, 0.0))
        throw std::invalid_argument("integrable_seed: no real action for this rotation number");
      Real root = sqrt(disc);
      Real base = -(l1 + l2).mul_2exp(-1);
      y0[0] = (branch >= 0) ? base + root.mul_2exp(-1) : base - root.mul_2exp(-1);
      break;
    }
    case MapKind::Froeschle:
      y0[0] = omega[0];
      y0[1] = omega[1];
      break;
  }
  const long total = shape.total();
  for (int i = 0; i < n; ++i)
    for (long f = 0; f < total; ++f) g.comps[n + i][f] = y0[i];
  return Torus<Real>::from_grid(n, shape, prec, omega, std::move(g));
}

void write_torus_file(const std::string& path, const Torus<Real>& t, int digits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open torus file for writing: " + path);
  out << t.n << "\n";
  for (int i = 0; i < t.shape.n(); ++i) out << (i ? " " : "") << t.shape.N[i];
  out << "\n" << digits << "\n";
  const long total = t.shape.total();
  for (long f = 0; f < total; ++f) {
    for (int c = 0; c < 2 * t.n; ++c)
      out << (c ? " " : "") << t.Kp_grid.comps[c][f].to_string(digits);
    out << "\n";
  }
}

namespace {

void read_header(std::istream& in, int& n, GridShape& shape, int& digits) {
  in >> n;
  if (!in || n < 1 || n > 2) throw std::runtime_error("torus file: bad dimension line");
  shape.N.assign(n, 0);
  for (int i = 0; i < n; ++i) in >> shape.N[i];
  in >> digits;
  if (!in) throw std::runtime_error("torus file: bad header");
  if (!shape.power_of_two()) throw std::runtime_error("torus file: grid must be powers of two");
}

}  // namespace

Torus<Real> read_torus_file(const std::string& path, const std::vector<Real>& omega, long prec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open torus file: " + path);
  int n = 0, digits = 0;
  GridShape shape;
  read_header(in, n, shape, digits);
  GridSampling<Real> g(shape, 2 * n, prec);
  const long total = shape.total();
  std::string tok;
  for (long f = 0; f < total; ++f)
    for (int c = 0; c < 2 * n; ++c) {
      if (!(in >> tok)) throw std::runtime_error("torus file: truncated data");
      g.comps[c][f] = Real::from_string(tok, prec);
    }
  return Torus<Real>::from_grid(n, shape, prec, omega, std::move(g));
}

GridSampling<Interval> read_torus_file_interval(const std::string& path, GridShape& shape_out,
                                                int& n_out, long prec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open torus file: " + path);
  int digits = 0;
  read_header(in, n_out, shape_out, digits);
  GridSampling<Interval> g(shape_out, 2 * n_out, prec);
  const long total = shape_out.total();
  std::string tok;
  for (long f = 0; f < total; ++f)
    for (int c = 0; c < 2 * n_out; ++c) {
      if (!(in >> tok)) throw std::runtime_error("torus file: truncated data");
      g.comps[c][f] = Interval::from_string(tok, prec);
    }
  return g;
}

}  // namespace kam
