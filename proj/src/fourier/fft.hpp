#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prec/interval.hpp"
#include "prec/mat.hpp"
#include "prec/real.hpp"

namespace kam {

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& m) : std::runtime_error(m) {}
};

template <typename T>
struct Complex {
  T re, im;
  Complex() = default;
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  static Complex zero(long prec) {
    return Complex(ScalarTraits<T>::from_long(0, prec), ScalarTraits<T>::from_long(0, prec));
  }
  Complex conj() const { return Complex(re, -im); }
  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator*(const T& s, const Complex& a) { return Complex(s * a.re, s * a.im); }
};

// Multi-index helpers over a grid N = (N_1, ..., N_n). Storage is row-major
// with the last axis fastest. Coefficient arrays use the same layout with the
// wrap convention k = j for j < N/2 and k = j - N otherwise.
struct GridShape {
  std::vector<int> N;
  int n() const { return static_cast<int>(N.size()); }
  long total() const {
    long t = 1;
    for (int v : N) t *= v;
    return t;
  }
  bool power_of_two() const {
    for (int v : N)
      if (v < 1 || (v & (v - 1)) != 0) return false;
    return true;
  }
  // Signed frequency along an axis for a storage index.
  static int freq(int j, int Naxis) { return j < Naxis / 2 ? j : j - Naxis; }
  std::vector<int> unflatten(long idx) const {
    std::vector<int> j(N.size());
    for (int ax = n() - 1; ax >= 0; --ax) {
      j[ax] = static_cast<int>(idx % N[ax]);
      idx /= N[ax];
    }
    return j;
  }
  long flatten(const std::vector<int>& j) const {
    long idx = 0;
    for (int ax = 0; ax < n(); ++ax) idx = idx * N[ax] + j[ax];
    return idx;
  }
  bool operator==(const GridShape& o) const { return N == o.N; }
};

// Real m-component function sampled on the regular grid theta_j = (j_l/N_l).
template <typename T>
struct GridSampling {
  GridShape shape;
  int m = 0;
  long prec = 0;
  // comps[c][flat_index]
  std::vector<std::vector<T>> comps;

  GridSampling() = default;
  GridSampling(GridShape s, int m_, long prec_)
      : shape(std::move(s)), m(m_), prec(prec_),
        comps(m_, std::vector<T>(shape.total(), ScalarTraits<T>::from_long(0, prec_))) {}
};

// Truncated Fourier series with complex coefficients on the index set
// -N_l/2 <= k_l < N_l/2, stored in wrapped order.
template <typename T>
struct FourierSeries {
  GridShape shape;
  int m = 0;
  long prec = 0;
  bool real_symmetric = true;
  std::vector<std::vector<Complex<T>>> comps;

  FourierSeries() = default;
  FourierSeries(GridShape s, int m_, long prec_)
      : shape(std::move(s)), m(m_), prec(prec_),
        comps(m_, std::vector<Complex<T>>(shape.total(), Complex<T>::zero(prec_))) {}
};

// Cached unit roots e^{-2 pi i j / N}, j = 0..N/2-1, at a given precision.
template <typename T>
const std::vector<Complex<T>>& twiddle_table(int N, long prec);

// Forward transform: coefficients (1/Ntot) sum_j f_j e^{-2 pi i k theta_j}.
// Requires power-of-two axes. Interval inputs yield coefficient enclosures.
template <typename T>
FourierSeries<T> fft_forward(const GridSampling<T>& s);

// Backward transform: complex grid values sum_k f_k e^{2 pi i k theta_j}.
template <typename T>
std::vector<std::vector<Complex<T>>> fft_backward_complex(const FourierSeries<T>& f);

// Backward transform of a series of a real function; imaginary enclosures are
// discarded (the true values are real), returning the real-part grid.
template <typename T>
GridSampling<T> fft_backward(const FourierSeries<T>& f);

// Naive quadratic-cost transform, used as an independent oracle in tests.
template <typename T>
FourierSeries<T> dft_forward_naive(const GridSampling<T>& s);

// Diagonal Fourier-space operations.
template <typename T>
FourierSeries<T> series_derivative(const FourierSeries<T>& f, int axis);
template <typename T>
FourierSeries<T> series_shift(const FourierSeries<T>& f, const std::vector<T>& omega);

// Sum_k |f_k| e^{2 pi |k|_1 rho}, an upper bound for the analytic sup norm on
// the strip of width rho. For m > 1 the component results are returned
// separately (callers combine them by max or row sums).
template <typename T>
T fourier_norm_component(const FourierSeries<T>& f, int comp, const T& rho);

// Vector norm: max over components.
template <typename T>
T fourier_norm_vector(const FourierSeries<T>& f, const T& rho);

// Matrix-valued series stored as independent scalar series per entry.
template <typename T>
struct MatSeries {
  int rows = 0, cols = 0;
  FourierSeries<T> series;  // m = rows*cols, entry (i,j) at component i*cols+j
  int comp(int i, int j) const { return i * cols + j; }
};

template <typename T>
T fourier_norm_matrix(const MatSeries<T>& a, const T& rho);

// Grid of matrices (same storage convention as MatSeries).
template <typename T>
struct MatGrid {
  int rows = 0, cols = 0;
  GridShape shape;
  long prec = 0;
  std::vector<std::vector<T>> comps;  // comps[i*cols+j][flat]
  MatGrid() = default;
  MatGrid(int r, int c, GridShape s, long prec_)
      : rows(r), cols(c), shape(std::move(s)), prec(prec_),
        comps(static_cast<size_t>(r) * c,
              std::vector<T>(shape.total(), ScalarTraits<T>::from_long(0, prec_))) {}
  int comp(int i, int j) const { return i * cols + j; }
  Mat<T> at(long flat) const {
    Mat<T> m(rows, cols, prec);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = comps[comp(i, j)][flat];
    return m;
  }
  void set(long flat, const Mat<T>& m) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) comps[comp(i, j)][flat] = m(i, j);
  }
};

template <typename T>
MatSeries<T> mat_fft_forward(const MatGrid<T>& g);
template <typename T>
MatGrid<T> mat_fft_backward(const MatSeries<T>& s);
template <typename T>
MatSeries<T> mat_series_shift(const MatSeries<T>& a, const std::vector<T>& omega);

}  // namespace kam
