#include "validator/validator.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "divisors/russmann.hpp"

namespace kam {

void KamParams::check() const {
  Interval three = Interval::point(3L, precision);
  if (!delta.certainly_positive()) throw std::invalid_argument("params: delta must be > 0");
  if (!(delta.upper() * Real(precision, 3.0) < rho.lower()))
    throw std::invalid_argument("params: need delta < rho/3");
  if (!(rho.upper() < rho_hat.lower())) throw std::invalid_argument("params: need rho < rho_hat");
  if (!(sigma.lower() > Real(precision, 1.0)))
    throw std::invalid_argument("params: need sigma > 1");
  if (!d_B.certainly_positive()) throw std::invalid_argument("params: d_B must be > 0");
  if (!(a2.lower() > Real(precision, 1.0))) throw std::invalid_argument("params: need a2 > 1");
  if (!(a1().lower() > Real(precision, 1.0)))
    throw std::invalid_argument("params: derived a1 must exceed 1 (delta too close to rho/3)");
}

Validator::Validator(MapModel model, DiophantineCert cert, KamParams params, N0Strategy strategy,
                     int num_threads)
    : model_(std::move(model)), cert_(std::move(cert)), params_(std::move(params)),
      strategy_(strategy), num_threads_(num_threads) {
  params_.check();
}

Torus<Interval> Validator::step0_prepare(const GridSampling<Interval>& sampling,
                                         StepBounds& sb) const {
  const int n = model_.n();
  const long p = params_.precision;
  if (sampling.m != 2 * n) throw ShapeMismatch("step0: sampling must have 2n components");

  FourierSeries<Interval> Kp = fft_forward(sampling);
  // zero the outer band: k_l <= -N_l/4 or k_l >= N_l/4 on some axis
  const long total = Kp.shape.total();
  for (long i = 0; i < total; ++i) {
    auto j = Kp.shape.unflatten(i);
    bool zero = false;
    for (int ax = 0; ax < Kp.shape.n(); ++ax) {
      int k = GridShape::freq(j[ax], Kp.shape.N[ax]);
      if (4 * k <= -Kp.shape.N[ax] || 4 * k >= Kp.shape.N[ax]) { zero = true; break; }
    }
    if (!zero) continue;
    for (int c = 0; c < Kp.m; ++c) Kp.comps[c][i] = Complex<Interval>::zero(p);
  }

  GridShape kp_shape = Kp.shape;
  Torus<Interval> K =
      Torus<Interval>::from_series(n, std::move(kp_shape), p, cert_.iomega, std::move(Kp));

  // strip norms of the periodic part
  auto comp_norm = [&](int c, const Interval& w) {
    return fourier_norm_component(K.Kp_series, c, w);
  };
  Interval zero = Interval::point(0L, p);
  sb.Kx_norm_rho = zero;
  sb.Ky_norm_rho = zero;
  sb.Kx_norm_rhohat = zero;
  sb.Ky_norm_rhohat = zero;
  sb.box.r.assign(2 * n, zero);
  sb.box.r_hat.assign(2 * n, zero);
  for (int i = 0; i < n; ++i) {
    Interval nx = comp_norm(i, params_.rho);
    Interval ny = comp_norm(n + i, params_.rho);
    Interval nx_hat = comp_norm(i, params_.rho_hat);
    Interval ny_hat = comp_norm(n + i, params_.rho_hat);
    sb.Kx_norm_rho = imax(sb.Kx_norm_rho, nx);
    sb.Ky_norm_rho = imax(sb.Ky_norm_rho, ny);
    sb.Kx_norm_rhohat = imax(sb.Kx_norm_rhohat, nx_hat);
    sb.Ky_norm_rhohat = imax(sb.Ky_norm_rhohat, ny_hat);
    sb.box.r[i] = params_.d_B + params_.rho + nx;
    sb.box.r[n + i] = params_.d_B + ny;
    sb.box.r_hat[i] = params_.rho_hat + nx_hat;
    sb.box.r_hat[n + i] = ny_hat;
  }
  sb.gb = model_.global_bounds(sb.box, p);
  sb.cn = approx_error_constant(params_.rho, params_.rho_hat, K.shape);
  return K;
}

void Validator::step1_error_bound(const Torus<Interval>& K, StepBounds& sb) const {
  const long p = params_.precision;
  InvarianceError<Interval> E = invariance_error(K, model_, num_threads_);
  sb.E_series_norm = fourier_norm_vector(E.series, params_.rho);
  Interval om_norm = abs(cert_.iomega[0]);
  for (size_t i = 1; i < cert_.iomega.size(); ++i) om_norm = imax(om_norm, abs(cert_.iomega[i]));
  Interval mx = sb.gb.c_Fp_hat + sb.Kx_norm_rhohat.mul_2exp(1) + om_norm;
  Interval my = sb.gb.c_Fp_hat + sb.Ky_norm_rhohat;
  sb.b_E = sb.E_series_norm + sb.cn.CN * imax(mx, my);
  (void)p;
}

namespace {

MatSeries<Interval> transpose_series(const MatSeries<Interval>& a) {
  MatSeries<Interval> r;
  r.rows = a.cols;
  r.cols = a.rows;
  r.series = FourierSeries<Interval>(a.series.shape, a.rows * a.cols, a.series.prec);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) r.series.comps[r.comp(j, i)] = a.series.comps[a.comp(i, j)];
  return r;
}

}  // namespace

TorusFrame<Interval> Validator::step2_frame_bounds(const Torus<Interval>& K,
                                                   StepBounds& sb) const {
  const int n = model_.n();
  const long p = params_.precision;
  TorusFrame<Interval> fr = build_frame(K, model_, strategy_, num_threads_);

  sb.b_DK = fourier_norm_matrix(fr.DK_series, params_.rho);
  MatSeries<Interval> DKt = transpose_series(fr.DK_series);
  sb.b_DKt = fourier_norm_matrix(DKt, params_.rho);
  Interval b_DK_hat = fourier_norm_matrix(fr.DK_series, params_.rho_hat);
  Interval b_DKt_hat = fourier_norm_matrix(DKt, params_.rho_hat);

  Interval one = Interval::point(1L, p);
  if (strategy_ == N0Strategy::ConstantVertical) {
    sb.c_N0 = one;
    sb.c_N0t = one;
    sb.c_N0_hat = one;
    sb.c_N0t_hat = one;
    sb.c_N0_Om_N0 = Interval::point(0L, p);
  } else {
    sb.c_N0 = sb.b_DK;
    sb.c_N0t = sb.b_DKt;
    sb.c_N0_hat = b_DK_hat;
    sb.c_N0t_hat = b_DKt_hat;
    if (n == 1) {
      sb.c_N0_Om_N0 = Interval::point(0L, p);
    } else {
      // W = DK^T Omega0 DK on the grid, bounded through its series
      Mat<Interval> Om = model_.omega0<Interval>(p);
      MatGrid<Interval> W(n, n, K.shape, p);
      const long total = K.shape.total();
      for (long f = 0; f < total; ++f) {
        Mat<Interval> DK = fr.DK_grid.at(f);
        W.set(f, DK.transpose() * Om * DK);
      }
      MatSeries<Interval> Ws = mat_fft_forward(W);
      sb.c_N0_Om_N0 =
          fourier_norm_matrix(Ws, params_.rho) + sb.cn.CN * b_DKt_hat * b_DK_hat;
    }
  }

  Interval bB_rho = fourier_norm_matrix(fr.B_series, params_.rho);
  Interval bB_rhohat = fourier_norm_matrix(fr.B_series, params_.rho_hat);
  sb.t_B = sb.cn.CN * sb.gb.c_Omega_hat * sb.c_N0_hat * b_DKt_hat * bB_rhohat;
  if (!(sb.t_B.upper() < Real(p, 1.0)))
    throw NeumannFailure("step2: inverse certificate t_B reached 1");
  sb.b_B = bB_rho + sb.t_B * bB_rhohat / (one - sb.t_B);
  Interval nn = Interval::point(static_cast<long>(n), p);
  sb.b_A = nn.mul_2exp(-1) * sb.c_N0_Om_N0 * pow(sb.b_B, 2L);
  sb.b_N = sb.b_DK * sb.b_A + sb.c_N0 * sb.b_B;
  sb.b_Nt = sb.b_A * sb.b_DKt + nn * sb.b_B * sb.c_N0t;
  return fr;
}

void Validator::step3_torsion(const TorusFrame<Interval>& fr, StepBounds& sb) const {
  const long p = params_.precision;
  std::vector<int> zero_idx(fr.T_grid.shape.n(), 0);
  sb.s_star_0 = alias_coeff_bound(zero_idx, params_.rho, fr.T_grid.shape);
  sb.t_T = sb.s_star_0 * sb.gb.c_Omega * sb.gb.c_DF * sb.b_N * sb.b_Nt;
  Mat<Interval> T0inv;
  try {
    T0inv = fr.T_avg.inverse();
  } catch (const PossiblySingular&) {
    throw TorsionDegenerate("step3: averaged torsion possibly singular");
  }
  sb.T0_inv_norm = T0inv.rowsum_norm();
  Interval prod = sb.T0_inv_norm * sb.t_T;
  if (!(prod.upper() < Real(p, 1.0)))
    throw TorsionDegenerate("step3: torsion Neumann product reached 1");
  sb.b_T = sb.T0_inv_norm / (Interval::point(1L, p) - prod);
}

Chain<Interval> Validator::step4_ledger(const StepBounds& sb) const {
  ChainInputs<Interval> in;
  in.n = model_.n();
  in.gamma = cert_.gamma;
  in.tau = cert_.tau;
  in.rho = params_.rho;
  in.delta = params_.delta;
  in.sigma = params_.sigma;
  in.d_B = params_.d_B;
  in.a1 = params_.a1();
  in.a3 = params_.a3();
  in.c_R = sb.c_R;
  in.c_Omega = sb.gb.c_Omega;
  in.c_DOmega = sb.gb.c_DOmega;
  in.c_Da = sb.gb.c_Da;
  in.c_D2a = sb.gb.c_D2a;
  in.c_DF = sb.gb.c_DF;
  in.c_D2F = sb.gb.c_D2F;
  in.c_N0 = sb.c_N0;
  in.c_N0t = sb.c_N0t;
  in.c_N0_Om_N0 = sb.c_N0_Om_N0;
  in.b_E = sb.b_E;
  in.b_DK = sb.b_DK;
  in.b_DKt = sb.b_DKt;
  in.b_B = sb.b_B;
  in.b_T = sb.b_T;
  return evaluate_chain(in);
}

ValidationReport Validator::validate(const GridSampling<Interval>& sampling) const {
  auto t0 = std::chrono::steady_clock::now();
  ValidationReport rep;
  rep.cert = cert_;
  rep.params = params_;
  rep.grid = sampling.shape;
  rep.model_name = model_.name();
  rep.rho_inf = params_.rho_inf();
  const long p = params_.precision;

  std::string step = "step0";
  try {
    Torus<Interval> K = step0_prepare(sampling, rep.bounds);
    step = "step1";
    step1_error_bound(K, rep.bounds);
    step = "step2";
    TorusFrame<Interval> fr = step2_frame_bounds(K, rep.bounds);
    step = "step3";
    step3_torsion(fr, rep.bounds);
    step = "russmann";
    rep.bounds.c_R = russmann_cR_auto(cert_.iomega, cert_.gamma, cert_.tau, params_.delta,
                                      params_.L_cap, params_.L_reltol, &rep.bounds.L_used);
    step = "step4";
    rep.chain = step4_ledger(rep.bounds);
  } catch (const std::exception& e) {
    rep.validated = false;
    rep.failing_step = step;
    rep.failure_reason = e.what();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  rep.lhs = rep.chain.lhs;
  rep.closeness = rep.chain.closeness;
  rep.validated = rep.lhs.upper() < Real(p, 1.0);
  if (!rep.validated) {
    rep.failing_step = "kam-condition";
    rep.failure_reason = "lhs upper bound not below one";
  }

  if (cert_.from_tau_min && cert_.tau.lower() > Real(p, static_cast<double>(cert_.n()))) {
    Interval nn = Interval::point(static_cast<long>(cert_.n()), p);
    Interval den = (cert_.tau - nn) * pow(Interval::point(cert_.M, p), cert_.tau - nn) *
                   pow(params_.rho, cert_.tau);
    Interval root4 = sqrt(sqrt(rep.chain.frak1 * rep.bounds.b_E));
    rep.measure_lb = Interval::point(1L, p) - cert_.C_iomega * root4 / den;
    rep.has_measure = true;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

std::string iv(const Interval& x, int digits) { return x.to_string(digits); }

void emit_kv(std::ostream& os, const std::string& key, const Interval& x, int digits) {
  os << key << ".lo = " << x.lower().to_string(digits) << "\n";
  os << key << ".hi = " << x.upper().to_string(digits) << "\n";
}

}  // namespace

std::string report_to_text(const ValidationReport& r, int digits) {
  std::ostringstream os;
  os << "== torus validation report ==\n";
  os << "model: " << r.model_name << "\n";
  os << "grid:";
  for (int v : r.grid.N) os << " " << v;
  os << "\nprecision_bits: " << r.params.precision << "\n";
  os << "verdict: " << (r.validated ? "validated" : "failed") << "\n";
  if (!r.validated)
    os << "failed_at: " << r.failing_step << " (" << r.failure_reason << ")\n";
  os << "elapsed_seconds: " << r.seconds << "\n";
  os << "gamma: " << iv(r.cert.gamma, digits) << "\n";
  os << "tau: " << r.cert.tau_text << "\n";
  if (r.failing_step.empty() || r.failing_step == "kam-condition") {
    os << "lhs = frak1*b_E/(gamma^4 rho^(4 tau)): " << iv(r.lhs, digits) << "\n";
    os << "closeness = frak2*b_E/(gamma^2 rho^(2 tau)): " << iv(r.closeness, digits) << "\n";
    os << "rho_inf: " << iv(r.rho_inf, digits) << "\n";
    if (r.has_measure) os << "diophantine_measure_lb: " << iv(r.measure_lb, digits) << "\n";
    os << "-- step bounds --\n";
    os << "b_E: " << iv(r.bounds.b_E, digits) << "\n";
    os << "E_series_norm: " << iv(r.bounds.E_series_norm, digits) << "\n";
    os << "C_N(rho,rho_hat): " << iv(r.bounds.cn.CN, digits) << "\n";
    os << "b_DK: " << iv(r.bounds.b_DK, digits) << "\n";
    os << "b_DKt: " << iv(r.bounds.b_DKt, digits) << "\n";
    os << "t_B: " << iv(r.bounds.t_B, digits) << "\n";
    os << "b_B: " << iv(r.bounds.b_B, digits) << "\n";
    os << "b_A: " << iv(r.bounds.b_A, digits) << "\n";
    os << "b_N: " << iv(r.bounds.b_N, digits) << "\n";
    os << "b_Nt: " << iv(r.bounds.b_Nt, digits) << "\n";
    os << "s_star_0: " << iv(r.bounds.s_star_0, digits) << "\n";
    os << "t_T: " << iv(r.bounds.t_T, digits) << "\n";
    os << "b_T: " << iv(r.bounds.b_T, digits) << "\n";
    os << "c_R(delta) (L=" << r.bounds.L_used << "): " << iv(r.bounds.c_R, digits) << "\n";
    os << "c_DF: " << iv(r.bounds.gb.c_DF, digits) << "\n";
    os << "c_D2F: " << iv(r.bounds.gb.c_D2F, digits) << "\n";
    os << "c_Fp_hat: " << iv(r.bounds.gb.c_Fp_hat, digits) << "\n";
    os << "-- chain --\n";
    const auto& c = r.chain;
    os << "sigma_star: " << iv(c.sigma_star, digits) << "\n";
    os << "beta1: " << iv(c.beta1, digits) << "\n";
    os << "beta5: " << iv(c.beta5, digits) << "\n";
    os << "c_T: " << iv(c.c_T, digits) << "\n";
    os << "C3: " << iv(c.C3, digits) << "\n";
    os << "C2hat: " << iv(c.C2hat, digits) << "\n";
    os << "C15: " << iv(c.C15, digits) << "\n";
    os << "C5hat: " << iv(c.C5hat, digits) << "\n";
    os << "frak1: " << iv(c.frak1, digits) << "\n";
    os << "frak2: " << iv(c.frak2, digits) << "\n";
    os << "frak3: " << iv(c.frak3, digits) << "\n";
    os << "frak4: " << iv(c.frak4, digits) << "\n";
    os << "frak5: " << iv(c.frak5, digits) << "\n";
  }
  return os.str();
}

void write_report_file(const std::string& path, const ValidationReport& r) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << report_to_text(r);
  out << "-- machine block --\n";
  out << "verdict = " << (r.validated ? "validated" : "failed") << "\n";
  out << "model = " << r.model_name << "\n";
  int d = 17;
  if (r.failing_step.empty() || r.failing_step == "kam-condition") {
    emit_kv(out, "lhs", r.lhs, d);
    emit_kv(out, "closeness", r.closeness, d);
    emit_kv(out, "b_E", r.bounds.b_E, d);
    emit_kv(out, "b_DK", r.bounds.b_DK, d);
    emit_kv(out, "b_DKt", r.bounds.b_DKt, d);
    emit_kv(out, "b_B", r.bounds.b_B, d);
    emit_kv(out, "b_A", r.bounds.b_A, d);
    emit_kv(out, "b_N", r.bounds.b_N, d);
    emit_kv(out, "b_Nt", r.bounds.b_Nt, d);
    emit_kv(out, "b_T", r.bounds.b_T, d);
    emit_kv(out, "t_B", r.bounds.t_B, d);
    emit_kv(out, "t_T", r.bounds.t_T, d);
    emit_kv(out, "c_R", r.bounds.c_R, d);
    emit_kv(out, "C_N", r.bounds.cn.CN, d);
    emit_kv(out, "frak1", r.chain.frak1, d);
    emit_kv(out, "frak2", r.chain.frak2, d);
    if (r.has_measure) emit_kv(out, "measure_lb", r.measure_lb, d);
  } else {
    out << "failed_at = " << r.failing_step << "\n";
  }
}

}  // namespace kam
