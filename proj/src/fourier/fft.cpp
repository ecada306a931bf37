#include "fourier/fft.hpp"

#include <map>
#include <mutex>

namespace kam {

namespace {

int log2_exact(int N) {
  int q = 0;
  while ((1 << q) < N) ++q;
  if ((1 << q) != N) throw ShapeMismatch("grid size is not a power of two");
  return q;
}

template <typename T>
std::vector<Complex<T>> make_twiddles(int N, long prec) {
  // w_j = e^{-2 pi i j / N}; the angle 2 pi j / N is pi * (2j/N) with 2j/N
  // exactly representable, so the only enclosure widening comes from sin/cos.
  std::vector<Complex<T>> w;
  w.reserve(N / 2);
  T pi = ScalarTraits<T>::pi(prec);
  for (int j = 0; j < N / 2; ++j) {
    T frac = ScalarTraits<T>::from_long(2 * j, prec).mul_2exp(-log2_exact(N));
    T ang = pi * frac;
    w.emplace_back(cos(ang), -sin(ang));
  }
  return w;
}

template <typename T>
struct TwiddleCache {
  std::map<std::pair<int, long>, std::vector<Complex<T>>> table;
  std::mutex mu;
};

template <typename T>
TwiddleCache<T>& cache() {
  static TwiddleCache<T> c;
  return c;
}

// In-place radix-2 decimation-in-time along one axis for every line of the
// array. dir = -1 forward (conjugated roots), +1 backward.
template <typename T>
void fft_axis(std::vector<Complex<T>>& a, const GridShape& shape, int axis, int dir, long prec) {
  const int N = shape.N[axis];
  if (N == 1) return;
  const auto& w = twiddle_table<T>(N, prec);
  // stride between consecutive j along `axis`; number of lines = total/N.
  long stride = 1;
  for (int ax = shape.n() - 1; ax > axis; --ax) stride *= shape.N[ax];
  const long total = shape.total();
  const long block = stride * N;

  std::vector<Complex<T>> line(static_cast<size_t>(N), Complex<T>::zero(prec));
  for (long base = 0; base < total; base += block) {
    for (long off = 0; off < stride; ++off) {
      for (int j = 0; j < N; ++j) line[j] = a[base + off + stride * j];
      // bit reversal
      for (int i = 1, rev = 0; i < N; ++i) {
        int bit = N >> 1;
        for (; rev & bit; bit >>= 1) rev ^= bit;
        rev ^= bit;
        if (i < rev) std::swap(line[i], line[rev]);
      }
      for (int len = 2; len <= N; len <<= 1) {
        int step = N / len;
        for (int i = 0; i < N; i += len) {
          for (int j = 0; j < len / 2; ++j) {
            Complex<T> tw = w[static_cast<size_t>(j) * step];
            if (dir > 0) tw = tw.conj();
            Complex<T> u = line[i + j];
            Complex<T> v = tw * line[i + j + len / 2];
            line[i + j] = u + v;
            line[i + j + len / 2] = u - v;
          }
        }
      }
      for (int j = 0; j < N; ++j) a[base + off + stride * j] = line[j];
    }
  }
}

}  // namespace

template <typename T>
const std::vector<Complex<T>>& twiddle_table(int N, long prec) {
  auto& c = cache<T>();
  std::lock_guard<std::mutex> lk(c.mu);
  auto key = std::make_pair(N, prec);
  auto it = c.table.find(key);
  if (it == c.table.end()) it = c.table.emplace(key, make_twiddles<T>(N, prec)).first;
  return it->second;
}

template <typename T>
FourierSeries<T> fft_forward(const GridSampling<T>& s) {
  if (!s.shape.power_of_two()) throw ShapeMismatch("fft_forward: axes must be powers of two");
  FourierSeries<T> f(s.shape, s.m, s.prec);
  int qsum = 0;
  for (int v : s.shape.N) qsum += log2_exact(v);
  for (int c = 0; c < s.m; ++c) {
    auto& a = f.comps[c];
    for (long i = 0; i < s.shape.total(); ++i)
      a[i] = Complex<T>(s.comps[c][i], ScalarTraits<T>::from_long(0, s.prec));
    for (int ax = 0; ax < s.shape.n(); ++ax) fft_axis(a, s.shape, ax, -1, s.prec);
    for (auto& z : a) {  // exact scaling by 2^{-qsum}
      z.re = z.re.mul_2exp(-qsum);
      z.im = z.im.mul_2exp(-qsum);
    }
  }
  return f;
}

template <typename T>
std::vector<std::vector<Complex<T>>> fft_backward_complex(const FourierSeries<T>& f) {
  if (!f.shape.power_of_two()) throw ShapeMismatch("fft_backward: axes must be powers of two");
  std::vector<std::vector<Complex<T>>> out(f.m);
  for (int c = 0; c < f.m; ++c) {
    out[c] = f.comps[c];
    for (int ax = 0; ax < f.shape.n(); ++ax) fft_axis(out[c], f.shape, ax, +1, f.prec);
  }
  return out;
}

template <typename T>
GridSampling<T> fft_backward(const FourierSeries<T>& f) {
  auto z = fft_backward_complex(f);
  GridSampling<T> g(f.shape, f.m, f.prec);
  for (int c = 0; c < f.m; ++c)
    for (long i = 0; i < f.shape.total(); ++i) g.comps[c][i] = z[c][i].re;
  return g;
}

template <typename T>
FourierSeries<T> dft_forward_naive(const GridSampling<T>& s) {
  FourierSeries<T> f(s.shape, s.m, s.prec);
  const long total = s.shape.total();
  const int n = s.shape.n();
  T pi = ScalarTraits<T>::pi(s.prec);
  int qsum = 0;
  for (int v : s.shape.N) qsum += log2_exact(v);
  for (long ki = 0; ki < total; ++ki) {
    auto kj = s.shape.unflatten(ki);
    for (int c = 0; c < s.m; ++c) {
      Complex<T> acc = Complex<T>::zero(s.prec);
      for (long ji = 0; ji < total; ++ji) {
        auto j = s.shape.unflatten(ji);
        // angle = -2 pi sum_l k_l j_l / N_l   (k in wrapped convention)
        T frac = ScalarTraits<T>::from_long(0, s.prec);
        for (int ax = 0; ax < n; ++ax) {
          int k = GridShape::freq(kj[ax], s.shape.N[ax]);
          frac = frac + ScalarTraits<T>::from_long(2L * k * j[ax], s.prec)
                            .mul_2exp(-log2_exact(s.shape.N[ax]));
        }
        T ang = pi * frac;
        Complex<T> e(cos(ang), -sin(ang));
        acc = acc + Complex<T>(s.comps[c][ji] * e.re, s.comps[c][ji] * e.im);
      }
      f.comps[c][ki] = Complex<T>(acc.re.mul_2exp(-qsum), acc.im.mul_2exp(-qsum));
    }
  }
  return f;
}

template <typename T>
FourierSeries<T> series_derivative(const FourierSeries<T>& f, int axis) {
  FourierSeries<T> g(f.shape, f.m, f.prec);
  g.real_symmetric = f.real_symmetric;
  T twopi = ScalarTraits<T>::pi(f.prec).mul_2exp(1);
  const long total = f.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = f.shape.unflatten(i);
    int k = GridShape::freq(j[axis], f.shape.N[axis]);
    T fac = twopi * ScalarTraits<T>::from_long(k, f.prec);
    for (int c = 0; c < f.m; ++c) {
      // multiply by 2 pi i k
      const Complex<T>& z = f.comps[c][i];
      g.comps[c][i] = Complex<T>(-(fac * z.im), fac * z.re);
    }
  }
  return g;
}


namespace {

// |z| enclosure (upper endpoint is what norm consumers use).
Real complex_abs_upper(const Complex<Real>& z) { return sqrt(z.re * z.re + z.im * z.im); }
Interval complex_abs_upper(const Complex<Interval>& z) {
  return sqrt(pow(z.re, 2L) + pow(z.im, 2L));
}

// Value minus the nearest even integer; keeps sin/cos arguments small without
// losing rigor (integer subtraction is exact up to outward rounding).
Real reduce_mod2(const Real& x) {
  Real k = round_nearest(x.mul_2exp(-1));
  return x - k.mul_2exp(1);
}
Interval reduce_mod2(const Interval& x) {
  Real k = round_nearest(x.mid().mul_2exp(-1));
  return x - Interval::point(k.mul_2exp(1), x.prec());
}

}  // namespace

template <typename T>
FourierSeries<T> series_shift(const FourierSeries<T>& f, const std::vector<T>& omega) {
  if (static_cast<int>(omega.size()) != f.shape.n())
    throw ShapeMismatch("series_shift: omega dimension mismatch");
  FourierSeries<T> g(f.shape, f.m, f.prec);
  g.real_symmetric = f.real_symmetric;
  T pi = ScalarTraits<T>::pi(f.prec);
  const long total = f.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = f.shape.unflatten(i);
    // phase = 2 pi (k . omega), reduced mod 2 before the multiplication by pi
    T dot = ScalarTraits<T>::from_long(0, f.prec);
    for (int ax = 0; ax < f.shape.n(); ++ax) {
      int k = GridShape::freq(j[ax], f.shape.N[ax]);
      if (k != 0) dot = dot + ScalarTraits<T>::from_long(k, f.prec) * omega[ax];
    }
    T ang = pi * reduce_mod2(dot.mul_2exp(1));
    Complex<T> e(cos(ang), sin(ang));
    for (int c = 0; c < f.m; ++c) g.comps[c][i] = e * f.comps[c][i];
  }
  return g;
}

template <typename T>
T fourier_norm_component(const FourierSeries<T>& f, int comp, const T& rho) {
  // Per-axis weight tables e^{2 pi |k| rho}; the total weight is the product.
  const int n = f.shape.n();
  T twopirho = ScalarTraits<T>::pi(f.prec).mul_2exp(1) * rho;
  std::vector<std::vector<T>> w(n);
  for (int ax = 0; ax < n; ++ax) {
    w[ax].reserve(f.shape.N[ax]);
    for (int j = 0; j < f.shape.N[ax]; ++j) {
      long k = std::abs(GridShape::freq(j, f.shape.N[ax]));
      w[ax].push_back(exp(ScalarTraits<T>::from_long(k, f.prec) * twopirho));
    }
  }
  T acc = ScalarTraits<T>::from_long(0, f.prec);
  const long total = f.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = f.shape.unflatten(i);
    const Complex<T>& z = f.comps[comp][i];
    T a = complex_abs_upper(z);
    for (int ax = 0; ax < n; ++ax) a = a * w[ax][j[ax]];
    acc += a;
  }
  return acc;
}

template <typename T>
T fourier_norm_vector(const FourierSeries<T>& f, const T& rho) {
  T best = fourier_norm_component(f, 0, rho);
  for (int c = 1; c < f.m; ++c) {
    T s = fourier_norm_component(f, c, rho);
    if constexpr (ScalarTraits<T>::rigorous)
      best = imax(best, s);
    else
      best = max(best, s);
  }
  return best;
}

template <typename T>
T fourier_norm_matrix(const MatSeries<T>& a, const T& rho) {
  T best = ScalarTraits<T>::from_long(0, a.series.prec);
  for (int i = 0; i < a.rows; ++i) {
    T row = fourier_norm_component(a.series, a.comp(i, 0), rho);
    for (int j = 1; j < a.cols; ++j) row += fourier_norm_component(a.series, a.comp(i, j), rho);
    if constexpr (ScalarTraits<T>::rigorous)
      best = (i == 0) ? row : imax(best, row);
    else
      best = (i == 0) ? row : max(best, row);
  }
  return best;
}

template <typename T>
MatSeries<T> mat_fft_forward(const MatGrid<T>& g) {
  GridSampling<T> s(g.shape, g.rows * g.cols, g.prec);
  s.comps = g.comps;
  MatSeries<T> r;
  r.rows = g.rows;
  r.cols = g.cols;
  r.series = fft_forward(s);
  return r;
}

template <typename T>
MatGrid<T> mat_fft_backward(const MatSeries<T>& s) {
  GridSampling<T> g = fft_backward(s.series);
  MatGrid<T> r(s.rows, s.cols, s.series.shape, s.series.prec);
  r.comps = g.comps;
  return r;
}

template <typename T>
MatSeries<T> mat_series_shift(const MatSeries<T>& a, const std::vector<T>& omega) {
  MatSeries<T> r;
  r.rows = a.rows;
  r.cols = a.cols;
  r.series = series_shift(a.series, omega);
  return r;
}

// explicit instantiations
#define KAM_FFT_INSTANTIATE(T)                                                              \
  template const std::vector<Complex<T>>& twiddle_table<T>(int, long);                     \
  template FourierSeries<T> fft_forward<T>(const GridSampling<T>&);                         \
  template std::vector<std::vector<Complex<T>>> fft_backward_complex<T>(                    \
      const FourierSeries<T>&);                                                             \
  template GridSampling<T> fft_backward<T>(const FourierSeries<T>&);                        \
  template FourierSeries<T> dft_forward_naive<T>(const GridSampling<T>&);                   \
  template FourierSeries<T> series_derivative<T>(const FourierSeries<T>&, int);             \
  template FourierSeries<T> series_shift<T>(const FourierSeries<T>&, const std::vector<T>&);\
  template T fourier_norm_component<T>(const FourierSeries<T>&, int, const T&);             \
  template T fourier_norm_vector<T>(const FourierSeries<T>&, const T&);                     \
  template T fourier_norm_matrix<T>(const MatSeries<T>&, const T&);                         \
  template MatSeries<T> mat_fft_forward<T>(const MatGrid<T>&);                              \
  template MatGrid<T> mat_fft_backward<T>(const MatSeries<T>&);                             \
  template MatSeries<T> mat_series_shift<T>(const MatSeries<T>&, const std::vector<T>&);

KAM_FFT_INSTANTIATE(Real)
KAM_FFT_INSTANTIATE(Interval)
#undef KAM_FFT_INSTANTIATE

}  // namespace kam
