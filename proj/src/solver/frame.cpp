#include "solver/frame.hpp"

#include "util/parallel.hpp"

namespace kam {

namespace {

template <typename T>
MatSeries<T> tangent_series(const Torus<T>& K) {
  const int n = K.n;
  MatSeries<T> DK;
  DK.rows = 2 * n;
  DK.cols = n;
  DK.series = FourierSeries<T>(K.shape, 2 * n * n, K.prec);
  for (int ax = 0; ax < n; ++ax) {
    FourierSeries<T> d = series_derivative(K.Kp_series, ax);
    for (int i = 0; i < 2 * n; ++i) DK.series.comps[DK.comp(i, ax)] = std::move(d.comps[i]);
  }
  T one = ScalarTraits<T>::from_long(1, K.prec);
  for (int i = 0; i < n; ++i) {
    auto& z = DK.series.comps[DK.comp(i, i)][0];
    z.re = z.re + one;
  }
  return DK;
}

template <typename T>
MatSeries<T> apply_omega0_left(const MatSeries<T>& a, int n) {
  // Omega0 * M permutes row blocks with signs: row i <- -row(n+i), row n+i <- row i.
  MatSeries<T> r;
  r.rows = a.rows;
  r.cols = a.cols;
  r.series = FourierSeries<T>(a.series.shape, a.rows * a.cols, a.series.prec);
  const long total = a.series.shape.total();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < a.cols; ++j) {
      auto& dst = r.series.comps[r.comp(i, j)];
      const auto& src = a.series.comps[a.comp(n + i, j)];
      for (long f = 0; f < total; ++f) dst[f] = Complex<T>(-src[f].re, -src[f].im);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < a.cols; ++j)
      r.series.comps[r.comp(n + i, j)] = a.series.comps[a.comp(i, j)];
  return r;
}

}  // namespace

template <typename T>
TorusFrame<T> build_frame(const Torus<T>& K, const MapModel& model, N0Strategy strategy,
                          int num_threads) {
  const int n = K.n;
  const long p = K.prec;
  const long total = K.shape.total();
  TorusFrame<T> fr;

  fr.DK_series = tangent_series(K);
  fr.DK_grid = mat_fft_backward(fr.DK_series);
  fr.DK_shift_grid = mat_fft_backward(mat_series_shift(fr.DK_series, K.omega));

  if (strategy == N0Strategy::ConstantVertical) {
    if (model.n() != n) throw StrategyMismatch("constant_vertical: dimension mismatch");
    fr.N0_grid = MatGrid<T>(2 * n, n, K.shape, p);
    T one = ScalarTraits<T>::from_long(1, p);
    for (int i = 0; i < n; ++i)
      for (long f = 0; f < total; ++f) fr.N0_grid.comps[fr.N0_grid.comp(n + i, i)][f] = one;
    fr.N0_series = mat_fft_forward(fr.N0_grid);
  } else {
    fr.N0_series = apply_omega0_left(fr.DK_series, n);
    fr.N0_grid = mat_fft_backward(fr.N0_series);
  }

  Mat<T> Om = model.omega0<T>(p);
  fr.B_grid = MatGrid<T>(n, n, K.shape, p);
  fr.A_grid = MatGrid<T>(n, n, K.shape, p);
  fr.N_grid = MatGrid<T>(2 * n, n, K.shape, p);
  fr.DFK_grid = MatGrid<T>(2 * n, 2 * n, K.shape, p);

  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      Mat<T> DK = fr.DK_grid.at(f);
      Mat<T> N0 = fr.N0_grid.at(f);
      Mat<T> G = -(DK.transpose() * Om * N0);
      Mat<T> B = G.inverse();
      Mat<T> W = N0.transpose() * Om * N0;
      Mat<T> A = -ScalarTraits<T>::from_double(0.5, p) * (B.transpose() * W * B);
      Mat<T> N = DK * A + N0 * B;
      fr.B_grid.set(f, B);
      fr.A_grid.set(f, A);
      fr.N_grid.set(f, N);
      fr.DFK_grid.set(f, model.eval_DF(K.phase_point(f), p));
    }
  });

  fr.B_series = mat_fft_forward(fr.B_grid);
  fr.N_series = mat_fft_forward(fr.N_grid);
  fr.N_shift_grid = mat_fft_backward(mat_series_shift(fr.N_series, K.omega));

  fr.T_grid = MatGrid<T>(n, n, K.shape, p);
  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      Mat<T> Tj = fr.N_shift_grid.at(f).transpose() * Om * fr.DFK_grid.at(f) * fr.N_grid.at(f);
      fr.T_grid.set(f, Tj);
    }
  });

  int qsum = 0;
  for (int v : K.shape.N) {
    int q = 0;
    while ((1 << q) < v) ++q;
    qsum += q;
  }
  Mat<T> acc(n, n, p);
  for (long f = 0; f < total; ++f) acc = acc + fr.T_grid.at(f);
  fr.T_avg = Mat<T>(n, n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fr.T_avg(i, j) = acc(i, j).mul_2exp(-qsum);
  return fr;
}

template <typename T>
InvarianceError<T> invariance_error(const Torus<T>& K, const MapModel& model, int num_threads) {
  const int n = K.n;
  const long p = K.prec;
  const long total = K.shape.total();
  GridSampling<T> Kshift = fft_backward(series_shift(K.Kp_series, K.omega));

  InvarianceError<T> out;
  out.grid = GridSampling<T>(K.shape, 2 * n, p);
  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      std::vector<T> Fp = model.eval_Fp(K.phase_point(f), p);
      for (int i = 0; i < n; ++i)
        out.grid.comps[i][f] =
            K.Kp_grid.comps[i][f] + Fp[i] - Kshift.comps[i][f] - K.omega[i];
      for (int i = n; i < 2 * n; ++i)
        out.grid.comps[i][f] = Fp[i] - Kshift.comps[i][f];
    }
  });
  out.series = fft_forward(out.grid);
  return out;
}

Real error_norm_f0(const InvarianceError<Real>& e) {
  return fourier_norm_vector(e.series, Real(e.series.prec, 0.0));
}

template TorusFrame<Real> build_frame<Real>(const Torus<Real>&, const MapModel&, N0Strategy, int);
template TorusFrame<Interval> build_frame<Interval>(const Torus<Interval>&, const MapModel&,
                                                    N0Strategy, int);
template InvarianceError<Real> invariance_error<Real>(const Torus<Real>&, const MapModel&, int);
template InvarianceError<Interval> invariance_error<Interval>(const Torus<Interval>&,
                                                              const MapModel&, int);

}  // namespace kam
