#pragma once

#include <string>
#include <vector>

#include "fourier/fft.hpp"
#include "models/map_model.hpp"

namespace kam {

// Parameterization K(theta) = (theta, 0) + K_p(theta) of an approximately
// invariant torus, kept both as a grid sampling and as Fourier coefficients
// (2n real components; x block first).
template <typename T>
struct Torus {
  int n = 0;
  GridShape shape;
  long prec = 0;
  std::vector<T> omega;
  FourierSeries<T> Kp_series;
  GridSampling<T> Kp_grid;

  static Torus from_grid(int n, GridShape shape, long prec, std::vector<T> omega,
                         GridSampling<T> grid) {
    Torus t;
    t.n = n;
    t.shape = std::move(shape);
    t.prec = prec;
    t.omega = std::move(omega);
    t.Kp_grid = std::move(grid);
    t.Kp_series = fft_forward(t.Kp_grid);
    return t;
  }
  static Torus from_series(int n, GridShape shape, long prec, std::vector<T> omega,
                           FourierSeries<T> series) {
    Torus t;
    t.n = n;
    t.shape = std::move(shape);
    t.prec = prec;
    t.omega = std::move(omega);
    t.Kp_series = std::move(series);
    t.Kp_grid = fft_backward(t.Kp_series);
    return t;
  }

  // Phase-space point (theta_j, 0) + K_p(theta_j) at a flat grid index.
  std::vector<T> phase_point(long flat) const {
    std::vector<T> z;
    z.reserve(2 * n);
    auto j = shape.unflatten(flat);
    for (int i = 0; i < n; ++i) {
      int q = 0;
      while ((1 << q) < shape.N[i]) ++q;
      T theta = ScalarTraits<T>::from_long(j[i], prec).mul_2exp(-q);
      z.push_back(theta + Kp_grid.comps[i][flat]);
    }
    for (int i = 0; i < n; ++i) z.push_back(Kp_grid.comps[n + i][flat]);
    return z;
  }
};

// Constant-action seed: K_p = (0, y0) with y0 solving the unperturbed
// rotation-number equation of the model. branch selects the upper or lower
// action solution for the non-twist family.
Torus<Real> integrable_seed(const MapModel& model, const std::vector<Real>& omega,
                            const GridShape& shape, long prec, int branch = +1);

// Text format: n / grid sizes / digit count / one line of 2n decimals per
// grid point, last index fastest. Values round-trip at the declared digits.
void write_torus_file(const std::string& path, const Torus<Real>& t, int digits);
Torus<Real> read_torus_file(const std::string& path, const std::vector<Real>& omega, long prec);
// Interval read: each decimal becomes a tight enclosure at working precision.
GridSampling<Interval> read_torus_file_interval(const std::string& path, GridShape& shape_out,
                                                int& n_out, long prec);

}  // namespace kam
