#include "solver/newton.hpp"

#include <cmath>
#include <cstdio>

#include "divisors/cohomology.hpp"
#include "util/parallel.hpp"

namespace kam {

namespace {

std::vector<Real> matvec(const Mat<Real>& m, const std::vector<Real>& v) {
  std::vector<Real> r(m.rows(), Real(v[0].prec(), 0.0));
  for (int i = 0; i < m.rows(); ++i) {
    Real acc = m(i, 0) * v[0];
    for (int j = 1; j < m.cols(); ++j) acc += m(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

Real det_small(const Mat<Real>& m) {
  if (m.rows() == 1) return m(0, 0);
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

FourierSeries<Real> pad_double(const FourierSeries<Real>& f) {
  GridShape ns;
  ns.N = f.shape.N;
  for (auto& v : ns.N) v *= 2;
  FourierSeries<Real> g(ns, f.m, f.prec);
  const long total = f.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = f.shape.unflatten(i);
    std::vector<int> jj(j.size());
    for (size_t ax = 0; ax < j.size(); ++ax) {
      int k = GridShape::freq(j[ax], f.shape.N[ax]);
      jj[ax] = k >= 0 ? k : k + ns.N[ax];
    }
    long dst = ns.flatten(jj);
    for (int c = 0; c < f.m; ++c) g.comps[c][dst] = f.comps[c][i];
  }
  return g;
}

}  // namespace

Real tail_band_mass(const FourierSeries<Real>& f) {
  // modes with |k_l| >= N_l/4 on some axis (the band the rigorous
  // preparation step sets to zero)
  const long total = f.shape.total();
  Real acc(f.prec, 0.0);
  for (long i = 0; i < total; ++i) {
    auto j = f.shape.unflatten(i);
    bool in_band = false;
    for (int ax = 0; ax < f.shape.n(); ++ax) {
      int k = GridShape::freq(j[ax], f.shape.N[ax]);
      if (4 * std::abs(k) >= f.shape.N[ax]) { in_band = true; break; }
    }
    if (!in_band) continue;
    for (int c = 0; c < f.m; ++c) {
      const auto& z = f.comps[c][i];
      acc += sqrt(z.re * z.re + z.im * z.im);
    }
  }
  return acc;
}

Torus<Real> newton_step(const Torus<Real>& K, const MapModel& model, N0Strategy strategy,
                        NewtonDiagnostics* diag, int num_threads) {
  const int n = K.n;
  const long p = K.prec;
  const long total = K.shape.total();

  InvarianceError<Real> E = invariance_error(K, model, num_threads);
  TorusFrame<Real> fr = build_frame(K, model, strategy, num_threads);

  Real guard = Real::from_string("1e-14", p);
  if (abs(det_small(fr.T_avg)) < guard)
    throw DegenerateTorsion("average torsion not invertible");

  Mat<Real> Om = model.omega0<Real>(p);

  GridSampling<Real> etaL(K.shape, n, p), etaN(K.shape, n, p);
  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      std::vector<Real> Ev(2 * n, Real(p, 0.0));
      for (int c = 0; c < 2 * n; ++c) Ev[c] = E.grid.comps[c][f];
      std::vector<Real> OmE = matvec(Om, Ev);
      Mat<Real> Ns = fr.N_shift_grid.at(f);
      Mat<Real> DKs = fr.DK_shift_grid.at(f);
      for (int i = 0; i < n; ++i) {
        Real accL(p, 0.0), accN(p, 0.0);
        for (int r = 0; r < 2 * n; ++r) {
          accL += Ns(r, i) * OmE[r];
          accN += DKs(r, i) * OmE[r];
        }
        etaL.comps[i][f] = -accL;
        etaN.comps[i][f] = accN;
      }
    }
  });

  // xi_N = R(eta_N) + xi_N0, with the average chosen so the upper equation is
  // solvable; xi_L = R(eta_L - T xi_N), zero average.
  FourierSeries<Real> etaN_hat = fft_forward(etaN);
  GridSampling<Real> RetaN = fft_backward(solve_cohomological_float(etaN_hat, K.omega));

  int qsum = 0;
  for (int v : K.shape.N) {
    int q = 0;
    while ((1 << q) < v) ++q;
    qsum += q;
  }
  std::vector<Real> avg_w(n, Real(p, 0.0));
  {
    GridSampling<Real> w(K.shape, n, p);
    parallel_for(0, total, num_threads, [&](long lo, long hi) {
      for (long f = lo; f < hi; ++f) {
        Mat<Real> Tj = fr.T_grid.at(f);
        std::vector<Real> rv(n, Real(p, 0.0));
        for (int i = 0; i < n; ++i) rv[i] = RetaN.comps[i][f];
        std::vector<Real> Trv = matvec(Tj, rv);
        for (int i = 0; i < n; ++i) w.comps[i][f] = etaL.comps[i][f] - Trv[i];
      }
    });
    for (int i = 0; i < n; ++i) {
      Real acc(p, 0.0);
      for (long f = 0; f < total; ++f) acc += w.comps[i][f];
      avg_w[i] = acc.mul_2exp(-qsum);
    }
  }
  std::vector<Real> xiN0 = matvec(fr.T_avg.inverse(), avg_w);

  GridSampling<Real> xiN(K.shape, n, p), u(K.shape, n, p);
  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      std::vector<Real> xv(n, Real(p, 0.0));
      for (int i = 0; i < n; ++i) xv[i] = RetaN.comps[i][f] + xiN0[i];
      Mat<Real> Tj = fr.T_grid.at(f);
      std::vector<Real> Txv = matvec(Tj, xv);
      for (int i = 0; i < n; ++i) {
        xiN.comps[i][f] = xv[i];
        u.comps[i][f] = etaL.comps[i][f] - Txv[i];
      }
    }
  });

  FourierSeries<Real> u_hat = fft_forward(u);
  if (diag) {
    Real res(p, 0.0);
    for (int i = 0; i < n; ++i) {
      const auto& z = u_hat.comps[i][0];
      res = max(res, sqrt(z.re * z.re + z.im * z.im));
    }
    diag->solvability_residual = res;
  }
  GridSampling<Real> xiL = fft_backward(solve_cohomological_float(u_hat, K.omega));

  GridSampling<Real> newKp(K.shape, 2 * n, p);
  parallel_for(0, total, num_threads, [&](long lo, long hi) {
    for (long f = lo; f < hi; ++f) {
      Mat<Real> DK = fr.DK_grid.at(f);
      Mat<Real> N = fr.N_grid.at(f);
      std::vector<Real> xl(n, Real(p, 0.0)), xn(n, Real(p, 0.0));
      for (int i = 0; i < n; ++i) {
        xl[i] = xiL.comps[i][f];
        xn[i] = xiN.comps[i][f];
      }
      std::vector<Real> d1 = matvec(DK, xl);
      std::vector<Real> d2 = matvec(N, xn);
      for (int c = 0; c < 2 * n; ++c)
        newKp.comps[c][f] = K.Kp_grid.comps[c][f] + d1[c] + d2[c];
    }
  });

  Torus<Real> out = Torus<Real>::from_grid(n, K.shape, p, K.omega, std::move(newKp));
  if (diag) {
    InvarianceError<Real> E2 = invariance_error(out, model, num_threads);
    diag->new_error = error_norm_f0(E2);
  }
  return out;
}

Torus<Real> solve_torus(Torus<Real> K, const MapModel& model, N0Strategy strategy,
                        const SolveOptions& opt) {
  Real last_err(K.prec, 0.0);
  bool have_last = false;
  int grew = 0;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    Real band = tail_band_mass(K.Kp_series);
    Real threshold = Real::from_double(opt.tail_fraction, K.prec) * opt.tol;
    while (band > threshold && K.shape.total() * (1L << K.shape.n()) <= opt.max_grid) {
      FourierSeries<Real> padded = pad_double(K.Kp_series);
      GridShape padded_shape = padded.shape;
      if (opt.verbose)
        std::fprintf(stderr, "  grid doubled to %ld modes (band mass %s)\n",
                     padded_shape.total(), band.to_string(3).c_str());
      K = Torus<Real>::from_series(K.n, padded_shape, K.prec, K.omega, std::move(padded));
      band = tail_band_mass(K.Kp_series);
    }
    InvarianceError<Real> E = invariance_error(K, model, opt.num_threads);
    Real err = error_norm_f0(E);
    if (opt.verbose)
      std::fprintf(stderr, "  newton iter %d: |E|_F0 = %s  (N=%ld)\n", iter,
                   err.to_string(3).c_str(), K.shape.total());
    if (err <= opt.tol) return K;
    if (have_last && err > last_err) {
      if (++grew >= 2) throw DivergenceDetected("invariance error grew twice in a row");
    } else {
      grew = 0;
    }
    last_err = err;
    have_last = true;
    K = newton_step(K, model, strategy, nullptr, opt.num_threads);
  }
  throw NoConvergence("newton iteration budget exhausted");
}

Torus<Real> solve_by_continuation(const MapModel& target, const std::vector<Real>& omega,
                                  N0Strategy strategy, const GridShape& initial_shape, long prec,
                                  const ContinuationOptions& opt) {
  double scale = std::max({std::abs(target.eps()), std::abs(target.lambda1()),
                           std::abs(target.lambda2())});
  Torus<Real> K = integrable_seed(target, omega, initial_shape, prec, opt.seed_branch);
  if (scale == 0.0) return solve_torus(K, target, strategy, opt.solve);

  double dt0 = opt.eps_step / scale;
  double t = 0.0, dt = std::min(1.0, dt0);
  int successes = 0;
  while (t < 1.0) {
    double tn = std::min(1.0, t + dt);
    MapModel m = MapModel::create(target.kind(), tn * target.eps(), tn * target.lambda1(),
                                  tn * target.lambda2());
    try {
      Torus<Real> next = solve_torus(K, m, strategy, opt.solve);
      K = std::move(next);
      t = tn;
      if (++successes >= 2 && dt < dt0) {
        dt = std::min(dt0, 2.0 * dt);
        successes = 0;
      }
    } catch (const std::runtime_error&) {
      dt *= 0.5;
      successes = 0;
      if (dt * scale < opt.min_step)
        throw NoConvergence("continuation step collapsed below the minimum step");
    }
  }
  return K;
}

Real reducibility_residual(const Torus<Real>& K, const MapModel& model, N0Strategy strategy) {
  const int n = K.n;
  const long p = K.prec;
  TorusFrame<Real> fr = build_frame(K, model, strategy, 1);
  // P o T_omega from shifted blocks
  const long total = K.shape.total();
  Real worst(p, 0.0);
  for (long f = 0; f < total; ++f) {
    Mat<Real> P(2 * n, 2 * n, p), Ps(2 * n, 2 * n, p);
    Mat<Real> DK = fr.DK_grid.at(f), N = fr.N_grid.at(f);
    Mat<Real> DKs = fr.DK_shift_grid.at(f), Ns = fr.N_shift_grid.at(f);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < n; ++j) {
        P(i, j) = DK(i, j);
        P(i, n + j) = N(i, j);
        Ps(i, j) = DKs(i, j);
        Ps(i, n + j) = Ns(i, j);
      }
    Mat<Real> lhs = Ps.inverse() * fr.DFK_grid.at(f) * P;
    Mat<Real> lambda = Mat<Real>::identity(2 * n, p);
    Mat<Real> Tj = fr.T_grid.at(f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) lambda(i, n + j) = Tj(i, j);
    worst = max(worst, (lhs - lambda).rowsum_norm());
  }
  return worst;
}

}  // namespace kam
