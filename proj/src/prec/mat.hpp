#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "prec/interval.hpp"
#include "prec/real.hpp"

namespace kam {

struct PossiblySingular : std::runtime_error {
  explicit PossiblySingular(const std::string& m) : std::runtime_error(m) {}
};

// Uniform scalar access for the shared float/interval code paths.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Real> {
  static constexpr bool rigorous = false;
  static Real from_long(long x, long prec) { return Real::from_long(x, prec); }
  static Real from_double(double x, long prec) { return Real::from_double(x, prec); }
  static Real pi(long prec) { return Real::pi(prec); }
  static Real tabs(const Real& x) { return abs(x); }
  // Upper bound of |x| as Real (exact for floats).
  static Real mag(const Real& x) { return abs(x); }
  static bool nonzero_for_pivot(const Real& x) {
    return abs(x) > Real::from_string("1e-14", x.prec());
  }
  static double pivot_size(const Real& x) { return abs(x).to_double(); }
  static Real tmax(const Real& a, const Real& b) { return max(a, b); }
  static double upper_d(const Real& x) { return x.to_double(); }
};

template <>
struct ScalarTraits<Interval> {
  static constexpr bool rigorous = true;
  static Interval from_long(long x, long prec) { return Interval::point(x, prec); }
  static Interval from_double(double x, long prec) { return Interval::point(x, prec); }
  static Interval pi(long prec) { return Interval::pi(prec); }
  static Interval tabs(const Interval& x) { return abs(x); }
  static Real mag(const Interval& x) { return x.mag(); }
  static bool nonzero_for_pivot(const Interval& x) { return !x.contains_zero(); }
  static double pivot_size(const Interval& x) { return x.mig().to_double(); }
  static Interval tmax(const Interval& a, const Interval& b) { return imax(a, b); }
  static double upper_d(const Interval& x) { return x.hi_d(); }
};

// Small dense matrix (n <= 4 in this project) with value semantics. Shape is
// fixed at construction.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols, long prec = 0)
      : rows_(rows), cols_(cols),
        data_(static_cast<size_t>(rows) * cols,
              ScalarTraits<T>::from_long(0, prec > 0 ? prec : default_precision())) {}

  static Mat identity(int n, long prec = 0) {
    Mat m(n, n, prec);
    for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<T>::from_long(1, prec > 0 ? prec : default_precision());
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Mat transpose() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Mat operator-() const {
    Mat r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
    return r;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
    Mat r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (int k = 1; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    return r;
  }
  friend Mat operator*(const T& s, const Mat& a) {
    Mat r(a.rows_, a.cols_);
    for (size_t k = 0; k < a.data_.size(); ++k) r.data_[k] = s * a.data_[k];
    return r;
  }

  // Max row sum of absolute values. For intervals the result is an interval
  // whose upper endpoint dominates the norm of every member matrix.
  T rowsum_norm() const {
    if (rows_ == 0) return ScalarTraits<T>::from_long(0, default_precision());
    T best = row_abs_sum(0);
    for (int i = 1; i < rows_; ++i) {
      T s = row_abs_sum(i);
      if constexpr (ScalarTraits<T>::rigorous)
        best = imax(best, s);
      else
        best = max(best, s);
    }
    return best;
  }

  // Inverse for square matrices up to 4x4: exact adjugate/Cramer for n <= 2,
  // Gaussian elimination with pivots kept away from zero for n <= 4. For
  // interval entries the result encloses the inverse of every member matrix.
  Mat inverse() const;

 private:
  T row_abs_sum(int i) const {
    T s = ScalarTraits<T>::tabs((*this)(i, 0));
    for (int j = 1; j < cols_; ++j) s += ScalarTraits<T>::tabs((*this)(i, j));
    return s;
  }
  static void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("Mat: shape mismatch");
  }
  int rows_, cols_;
  std::vector<T> data_;
};

template <typename T>
Mat<T> Mat<T>::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("Mat::inverse: not square");
  const int n = rows_;
  if (n > 4) throw std::invalid_argument("Mat::inverse: dimension > 4");
  if (n == 1) {
    if (!ScalarTraits<T>::nonzero_for_pivot((*this)(0, 0)))
      throw PossiblySingular("pivot not separated from zero");
    Mat r(1, 1);
    r(0, 0) = ScalarTraits<T>::from_long(1, default_precision()) / (*this)(0, 0);
    return r;
  }
  if (n == 2) {
    const T& a = (*this)(0, 0);
    const T& b = (*this)(0, 1);
    const T& c = (*this)(1, 0);
    const T& d = (*this)(1, 1);
    T det = a * d - b * c;
    if (!ScalarTraits<T>::nonzero_for_pivot(det)) throw PossiblySingular("pivot not separated from zero");
    Mat r(2, 2);
    r(0, 0) = d / det;
    r(0, 1) = -b / det;
    r(1, 0) = -c / det;
    r(1, 1) = a / det;
    return r;
  }
  // Gauss-Jordan with row pivoting on the entry farthest from zero.
  Mat a(*this);
  Mat inv = Mat::identity(n);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int col = 0; col < n; ++col) {
    int best = -1;
    double best_size = 0.0;
    for (int row = col; row < n; ++row) {
      if (!ScalarTraits<T>::nonzero_for_pivot(a(row, col))) continue;
      double s = ScalarTraits<T>::pivot_size(a(row, col));
      if (best < 0 || s > best_size) { best = row; best_size = s; }
    }
    if (best < 0) throw PossiblySingular("pivot not separated from zero");
    if (best != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(best, j), a(col, j));
        std::swap(inv(best, j), inv(col, j));
      }
    T piv = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / piv;
      inv(col, j) = inv(col, j) / piv;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      T f = a(row, col);
      for (int j = 0; j < n; ++j) {
        a(row, j) = a(row, j) - f * a(col, j);
        inv(row, j) = inv(row, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

using IMat = Mat<Interval>;
using RMat = Mat<Real>;

}  // namespace kam
