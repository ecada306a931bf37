#include "tuner/tuner.hpp"

#include <cmath>
#include <cstdio>

#include "divisors/russmann.hpp"

namespace kam {

Real initial_rho(const Real& error_norm_f0, const GridShape& N) {
  const long p = error_norm_f0.prec();
  if (!(error_norm_f0 > Real(p, 0.0)) || !(error_norm_f0 < Real(p, 1.0)))
    throw InvalidError("initial_rho: need 0 < ||E||_F0 < 1");
  int nmax = 0;
  for (int v : N.N) nmax = std::max(nmax, v);
  Real denom = Real::pi(p).mul_2exp(1) * Real::from_long(nmax, p);
  return -(log(error_norm_f0) / denom);
}

Tuner::Tuner(MapModel model, DiophantineCert cert, N0Strategy strategy, TuneOptions opt)
    : model_(std::move(model)), cert_(std::move(cert)), strategy_(strategy),
      opt_(std::move(opt)) {}

namespace {

struct FloatModelBounds {
  Real c_DF, c_D2F, c_Fp_hat;
};

// Point-interval evaluation of the closed-form global bounds, upper ends.
FloatModelBounds float_global_bounds(const MapModel& model, const std::vector<Real>& r,
                                     const std::vector<Real>& r_hat, long p) {
  DomainBox box;
  for (const auto& v : r) box.r.push_back(Interval::point(v, p));
  for (const auto& v : r_hat) box.r_hat.push_back(Interval::point(v, p));
  GlobalBounds g = model.global_bounds(box, p);
  return {g.c_DF.upper(), g.c_D2F.upper(), g.c_Fp_hat.upper()};
}

Real s_star_zero_float(const GridShape& shape, const Real& rho, long p) {
  std::vector<int> z(shape.n(), 0);
  return alias_coeff_bound(z, Interval::point(rho, p), shape).upper();
}

}  // namespace

Tuner::BalancePoint Tuner::solve_sigma_dB(const Torus<Real>& K, const TorusFrame<Real>& fr,
                                          const FourierSeries<Real>& E_series, const Real& rho,
                                          const Real& delta) const {
  const long p = K.prec;
  const int n = model_.n();
  Real one(p, 1.0);

  // rho-dependent norms (grid-error constant taken as zero at this stage)
  Real E_rho = fourier_norm_vector(E_series, rho);
  Real b_DK = fourier_norm_matrix(fr.DK_series, rho);
  MatSeries<Real> DKt;
  DKt.rows = fr.DK_series.cols;
  DKt.cols = fr.DK_series.rows;
  DKt.series = FourierSeries<Real>(fr.DK_series.series.shape, DKt.rows * DKt.cols, p);
  for (int i = 0; i < fr.DK_series.rows; ++i)
    for (int j = 0; j < fr.DK_series.cols; ++j)
      DKt.series.comps[DKt.comp(j, i)] = fr.DK_series.series.comps[fr.DK_series.comp(i, j)];
  Real b_DKt = fourier_norm_matrix(DKt, rho);
  Real b_B = fourier_norm_matrix(fr.B_series, rho);

  Real c_N0, c_N0t, c_W(p, 0.0);
  if (strategy_ == N0Strategy::ConstantVertical) {
    c_N0 = one;
    c_N0t = one;
  } else {
    c_N0 = b_DK;
    c_N0t = b_DKt;
    if (n == 2) {
      Mat<Real> Om = model_.omega0<Real>(p);
      MatGrid<Real> W(n, n, K.shape, p);
      const long total = K.shape.total();
      for (long f = 0; f < total; ++f) {
        Mat<Real> DK = fr.DK_grid.at(f);
        W.set(f, DK.transpose() * Om * DK);
      }
      c_W = fourier_norm_matrix(mat_fft_forward(W), rho);
    }
  }

  Real T0n = fr.T_avg.inverse().rowsum_norm();
  Real s0 = s_star_zero_float(K.shape, rho, p);

  // c_R at this delta
  Real c_R = russmann_cR_auto(cert_.iomega, cert_.gamma, cert_.tau,
                              Interval::point(delta, p), opt_.russmann_cap)
                 .upper();

  Real gamma = cert_.gamma.lower();
  Real tau = cert_.tau.upper();
  Real a3 = rho / delta;
  Real a1 = a3 / (a3 - Real(p, 3.0));  // a2 = infinity during the search

  Real sm1 = Real::from_string("1e-6", p);
  Real d_B = delta * sm1;  // harmless starting margin, refined by the loop
  Chain<Real> chain;
  Real obj(p, 0.0);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    // model bounds at the current margin
    std::vector<Real> r(2 * n, Real(p, 0.0)), r_hat(2 * n, Real(p, 0.0));
    for (int i = 0; i < n; ++i) {
      Real nx = fourier_norm_component(K.Kp_series, i, rho);
      Real ny = fourier_norm_component(K.Kp_series, n + i, rho);
      r[i] = d_B + rho + nx;
      r[n + i] = d_B + ny;
      r_hat[i] = r[i];
      r_hat[n + i] = r[n + i];
    }
    FloatModelBounds g = float_global_bounds(model_, r, r_hat, p);

    Real b_A = Real(p, 0.5) * Real::from_long(n, p) * c_W * b_B * b_B;
    Real b_N = b_DK * b_A + c_N0 * b_B;
    Real b_Nt = b_A * b_DKt + Real::from_long(n, p) * b_B * c_N0t;
    Real t_T = s0 * g.c_DF * b_N * b_Nt;
    Real denomT = one - T0n * t_T;
    if (!(denomT > Real(p, 0.0))) throw NoFixedPoint("torsion certificate failed in tuning");
    Real b_T = T0n / denomT;

    ChainInputs<Real> ci;
    ci.n = n;
    ci.gamma = gamma;
    ci.tau = tau;
    ci.rho = rho;
    ci.delta = delta;
    ci.sigma = one + sm1;
    ci.d_B = d_B;
    ci.a1 = a1;
    ci.a3 = a3;
    ci.c_R = c_R;
    ci.c_Omega = one;
    ci.c_DOmega = Real(p, 0.0);
    ci.c_Da = one;
    ci.c_D2a = Real(p, 0.0);
    ci.c_DF = g.c_DF;
    ci.c_D2F = g.c_D2F;
    ci.c_N0 = c_N0;
    ci.c_N0t = c_N0t;
    ci.c_N0_Om_N0 = c_W;
    ci.b_E = E_rho;
    ci.b_DK = b_DK;
    ci.b_DKt = b_DKt;
    ci.b_B = b_B;
    ci.b_T = b_T;
    chain = evaluate_chain(ci);

    Real twotau = tau.mul_2exp(1);
    Real f1m2t = one - pow(a1, one - twotau);
    Real fm2t = one - pow(a1, -twotau);
    Real sm1_new = chain.sigma_star * pow(a3, twotau + one) * gamma * gamma *
                   pow(rho, twotau - one) * chain.C2hat /
                   (f1m2t * pow(a1 * a3, Real(p, 4.0) * tau) * chain.C5hat);
    Real dB_new = sm1_new * delta * f1m2t / (chain.sigma_star * fm2t);

    Real rel1 = abs(sm1_new - sm1) / max(sm1_new, Real::from_string("1e-300", p));
    Real rel2 = abs(dB_new - d_B) / max(dB_new, Real::from_string("1e-300", p));
    sm1 = (sm1 + sm1_new).mul_2exp(-1);
    d_B = (d_B + dB_new).mul_2exp(-1);
    if (rel1 < Real::from_string("1e-6", p) && rel2 < Real::from_string("1e-6", p)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoFixedPoint("sigma/d_B iteration did not settle in 200 rounds");

  Real frak1 = max(chain.frak3, max(chain.frak4, chain.frak5));
  obj = frak1 * E_rho / (pow(gamma, 4L) * pow(rho, Real(p, 4.0) * tau));
  BalancePoint out;
  out.sigma_minus_one = sm1;
  out.d_B = d_B;
  out.objective = obj;
  out.chain = chain;
  return out;
}

TuneResult Tuner::tune(const Torus<Real>& K) const {
  const long p = K.prec;
  const int n = model_.n();
  InvarianceError<Real> E = invariance_error(K, model_, opt_.num_threads);
  Real En0 = error_norm_f0(E);
  Real rho = initial_rho(En0, K.shape);
  TorusFrame<Real> fr = build_frame(K, model_, strategy_, opt_.num_threads);

  struct Candidate {
    Real rho, delta, sm1, d_B, objective;
    bool ok = false;
  };
  Candidate best;
  Real prev_obj(p, 0.0);
  bool have_prev = false;
  int failed_scans = 0;

  for (int rstep = 0; rstep < opt_.max_rho_steps; ++rstep) {
    Candidate cand;
    for (int i = 0; i < opt_.delta_scan; ++i) {
      Real lo = rho / Real::from_double(6.5, p);
      Real hi = rho / Real::from_double(4.5, p);
      Real t = Real::from_double(opt_.delta_scan == 1 ? 0.0
                                                      : static_cast<double>(i) /
                                                            (opt_.delta_scan - 1),
                                 p);
      Real delta = lo + t * (hi - lo);
      try {
        BalancePoint bp = solve_sigma_dB(K, fr, E.series, rho, delta);
        if (!cand.ok || bp.objective < cand.objective ||
            (bp.objective == cand.objective && delta < cand.delta)) {
          cand = {rho, delta, bp.sigma_minus_one, bp.d_B, bp.objective, true};
        }
      } catch (const std::runtime_error&) {
        continue;
      }
    }
    if (opt_.verbose && cand.ok)
      std::fprintf(stderr, "  tune: rho=%s objective=%s\n", rho.to_string(6).c_str(),
                   cand.objective.to_string(3).c_str());
    if (cand.ok && (!best.ok || cand.objective < best.objective)) best = cand;
    if (cand.ok && cand.objective < Real(p, 1.0)) break;
    if (cand.ok && have_prev && cand.objective > prev_obj) break;  // past the minimum
    if (cand.ok) {
      prev_obj = cand.objective;
      have_prev = true;
      failed_scans = 0;
    } else if (++failed_scans >= opt_.max_failed_rho_steps) {
      break;
    }
    rho = rho * Real::from_double(opt_.rho_shrink, p);
    if (rho < Real::from_string("1e-12", p)) break;
  }
  if (!best.ok || !(best.objective < Real(p, 1.0)))
    throw TorusTooRough("selection objective never dropped below one");

  // rho_hat scan with the grid-error constant restored
  Real gamma = cert_.gamma.lower();
  Real tau = cert_.tau.upper();
  Real best_obj(p, 0.0);
  Real best_rhohat(p, 0.0);
  bool have_hat = false;
  Real om_norm(p, 0.0);
  for (const auto& w : cert_.iomega) om_norm = max(om_norm, w.mag());
  BalancePoint bp = solve_sigma_dB(K, fr, E.series, best.rho, best.delta);
  Real frak1 = max(bp.chain.frak3, max(bp.chain.frak4, bp.chain.frak5));
  for (int i = 0; i < opt_.rhohat_scan; ++i) {
    double frac = static_cast<double>(i + 1) / opt_.rhohat_scan;
    double factor = opt_.rhohat_span_lo *
                    std::pow(opt_.rhohat_span_hi / opt_.rhohat_span_lo, frac);
    Real rhohat = best.rho * Real::from_double(factor, p);
    try {
      Interval cn = approx_error_constant(Interval::point(best.rho, p),
                                          Interval::point(rhohat, p), K.shape)
                        .CN;
      Real CN = cn.upper();
      // b_E with the truncation correction
      Real kx(p, 0.0), ky(p, 0.0);
      for (int c = 0; c < n; ++c) {
        kx = max(kx, fourier_norm_component(K.Kp_series, c, rhohat));
        ky = max(ky, fourier_norm_component(K.Kp_series, n + c, rhohat));
      }
      std::vector<Real> r(2 * n, Real(p, 0.0)), r_hat(2 * n, Real(p, 0.0));
      for (int c = 0; c < n; ++c) {
        r[c] = best.d_B + best.rho + fourier_norm_component(K.Kp_series, c, best.rho);
        r[n + c] = best.d_B + fourier_norm_component(K.Kp_series, n + c, best.rho);
        r_hat[c] = rhohat + kx;
        r_hat[n + c] = ky;
      }
      FloatModelBounds g = float_global_bounds(model_, r, r_hat, p);
      Real E_rho = fourier_norm_vector(E.series, best.rho);
      Real b_E = E_rho + CN * max(g.c_Fp_hat + kx.mul_2exp(1) + om_norm, g.c_Fp_hat + ky);
      Real obj = frak1 * b_E / (pow(gamma, 4L) * pow(best.rho, Real(p, 4.0) * tau));
      if (!have_hat || obj < best_obj) {
        best_obj = obj;
        best_rhohat = rhohat;
        have_hat = true;
      }
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  if (!have_hat) throw TorusTooRough("no usable rho_hat found");

  TuneResult res;
  res.params.rho = Interval::point(best.rho, p);
  res.params.delta = Interval::point(best.delta, p);
  res.params.sigma = Interval::point(Real(p, 1.0) + best.sm1, p);
  res.params.d_B = Interval::point(best.d_B, p);
  res.params.rho_hat = Interval::point(best_rhohat, p);
  res.params.a2 = opt_.a2;
  res.params.precision = p;
  res.objective = best_obj;
  res.sigma_minus_one = best.sm1;
  return res;
}

}  // namespace kam
