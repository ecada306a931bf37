// Command-line front end: solve approximately invariant tori, tune the
// validation parameters, run the rigorous validation, and reproduce the
// Diophantine / small-divisor constant tables.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "divisors/russmann.hpp"
#include "solver/newton.hpp"
#include "tuner/tuner.hpp"
#include "util/config.hpp"
#include "validator/validator.hpp"

using namespace kam;

namespace {

struct OmegaSpec {
  std::string kind;  // golden | quadratic | cubic | decimal
  int qa = 1, qb = 1;
  std::string decimal;
  std::string radius = "";  // decimal string; empty means 2^-50
};

OmegaSpec parse_omega_spec(const std::string& text) {
  OmegaSpec spec;
  std::istringstream in(text);
  std::string head;
  in >> head;
  if (head == "golden") {
    spec.kind = "golden";
  } else if (head == "quadratic") {
    spec.kind = "quadratic";
    if (!(in >> spec.qa >> spec.qb))
      throw CLI::ValidationError("--omega", "quadratic needs two integers: 'quadratic a b'");
  } else if (head == "cubic") {
    spec.kind = "cubic";
  } else {
    spec.kind = "decimal";
    spec.decimal = head;
  }
  return spec;
}

// Rigorous enclosure of the only real root of x^3 + x - 1 = 0.
Interval cubic_golden_number(long prec) {
  Real x = Real::from_string("0.68", prec);
  for (int it = 0; it < 64; ++it) {
    Real f = x * x * x + x - Real(prec, 1.0);
    Real df = Real(prec, 3.0) * x * x + Real(prec, 1.0);
    x -= f / df;
  }
  Interval pad = Interval::point(1L, prec).mul_2exp(-(prec - 8));
  Interval enc = hull(Interval::point(x, prec) - pad, Interval::point(x, prec) + pad);
  auto sign_at = [&](const Real& t) { return (t * t * t + t - Real(prec, 1.0)).sign(); };
  if (!(sign_at(enc.lower()) < 0 && sign_at(enc.upper()) > 0))
    throw std::runtime_error("cubic root enclosure failed its sign check");
  return enc;
}

Interval quadratic_omega(int a, int b, long prec) {
  // (sqrt(b^2 + 4 b / a) - b) / 2
  Interval ia = Interval::point(static_cast<long>(a), prec);
  Interval ib = Interval::point(static_cast<long>(b), prec);
  Interval disc = ib * ib + ib.mul_2exp(2) / ia;
  return (sqrt(disc) - ib).mul_2exp(-1);
}

std::vector<Interval> omega_intervals(const OmegaSpec& spec, long prec) {
  Interval pad = spec.radius.empty() ? Interval::point(1L, prec).mul_2exp(-50)
                                     : Interval::from_string(spec.radius, prec);
  auto padded = [&](const Interval& w) { return hull(w - pad, w + pad); };
  if (spec.kind == "golden")
    return {padded((sqrt(Interval::point(5L, prec)) - Interval::point(1L, prec)).mul_2exp(-1))};
  if (spec.kind == "quadratic") return {padded(quadratic_omega(spec.qa, spec.qb, prec))};
  if (spec.kind == "cubic") {
    Interval nu = cubic_golden_number(prec);
    return {padded(nu), padded(nu * nu)};
  }
  return {padded(Interval::from_string(spec.decimal, prec))};
}

std::vector<Real> omega_floats(const OmegaSpec& spec, long prec) {
  std::vector<Real> out;
  for (const auto& w : omega_intervals(spec, prec)) out.push_back(w.mid());
  return out;
}

DiophantineCert make_cert(const std::string& kind, const OmegaSpec& spec, long M, long prec) {
  if (kind == "golden") {
    if (spec.kind != "golden")
      throw CLI::ValidationError("--cert", "the golden certificate needs --omega golden");
    return golden_cert(prec);
  }
  if (kind == "taumin") return tau_min(omega_intervals(spec, prec), M);
  throw CLI::ValidationError("--cert", "expected 'golden' or 'taumin'");
}

KamParams params_from_config(const Config& cfg, long prec) {
  KamParams prm;
  prm.rho = Interval::from_string(cfg.get("rho"), prec);
  prm.delta = Interval::from_string(cfg.get("delta"), prec);
  prm.sigma = Interval::from_string(cfg.get("sigma"), prec);
  prm.rho_hat = Interval::from_string(cfg.get("rho_hat"), prec);
  prm.d_B = Interval::from_string(cfg.get("d_B"), prec);
  prm.a2 = Interval::from_string(cfg.get_or("a2", "1000"), prec);
  prm.precision = prec;
  return prm;
}

void params_to_config(const KamParams& prm, const Real& sigma_minus_one, Config& cfg) {
  const int d = 50;
  cfg.set("rho", prm.rho.mid().to_string(d));
  cfg.set("delta", prm.delta.mid().to_string(d));
  cfg.set("sigma", (Real(prm.precision, 1.0) + sigma_minus_one).to_string(d));
  cfg.set("d_B", prm.d_B.mid().to_string(d));
  cfg.set("rho_hat", prm.rho_hat.mid().to_string(d));
  cfg.set("a2", prm.a2.mid().to_string(8));
  cfg.set("precision", std::to_string(prm.precision));
}

GridShape parse_grid(const std::string& text) {
  GridShape shape;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, 'x')) shape.N.push_back(std::stoi(tok));
  if (shape.N.empty() || !shape.power_of_two())
    throw CLI::ValidationError("--grid", "grid sizes must be powers of two, e.g. 128 or 128x128");
  return shape;
}

long env_precision() {
  if (const char* e = std::getenv("KAMTORI_PRECISION")) return std::atol(e);
  return 267;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigorous validation of invariant tori in exact symplectic maps"};
  app.require_subcommand(1);
  app.fallthrough();

  long precision = env_precision();
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::string map_name = "standard", omega_text = "golden";
  double eps = 0.0, lambda1 = 0.0, lambda2 = 0.0;
  std::string omega_radius;
  std::string config_path;

  app.add_option("--precision-bits", precision, "working mantissa bits (env KAMTORI_PRECISION)");
  app.add_option("--threads", threads, "worker threads for grid passes");
  app.add_option("--config", config_path, "key = value file supplying model options");
  app.add_option("--map", map_name, "standard | nontwist | froeschle");
  app.add_option("--eps", eps, "forcing amplitude");
  app.add_option("--lambda1", lambda1, "first map parameter");
  app.add_option("--lambda2", lambda2, "second map parameter");
  app.add_option("--omega", omega_text,
                 "frequency: 'golden' | 'quadratic a b' | 'cubic' | decimal");
  app.add_option("--omega-radius", omega_radius, "interval radius as a decimal (default 2^-50)");

  auto* solve = app.add_subcommand("solve", "newton continuation to an invariant torus");
  std::string grid_text = "128", out_path = "torus.txt", tol_text = "1e-33";
  long solver_prec = 0;
  double cont_step = 0.02;
  int seed_branch = 1, digits = 0;
  long max_grid = 1 << 22;
  solve->add_option("--grid", grid_text, "initial grid, e.g. 128 or 128x128");
  solve->add_option("--tol", tol_text, "target invariance error in the F,0 norm");
  solve->add_option("--out", out_path, "torus sampling file to write");
  solve->add_option("--solver-precision", solver_prec, "float mantissa bits (default by tol)");
  solve->add_option("--continuation-step", cont_step, "parameter step of the continuation");
  solve->add_option("--seed-branch", seed_branch, "action branch for the non-twist seed (+1/-1)");
  solve->add_option("--digits", digits, "decimal digits written to the torus file");
  solve->add_option("--max-grid", max_grid, "largest total grid size");

  auto* tune = app.add_subcommand("tune", "heuristic selection of validation parameters");
  std::string torus_path = "torus.txt", params_out = "params.cfg", cert_kind = "golden";
  long cert_M = 1000;
  std::string a2_text = "1000";
  tune->add_option("--torus", torus_path, "torus sampling file");
  tune->add_option("--out", params_out, "parameter file to write");
  tune->add_option("--cert", cert_kind, "golden | taumin");
  tune->add_option("--cert-M", cert_M, "resonance cutoff for taumin");
  tune->add_option("--a2", a2_text, "final-strip divisor");

  auto* validate = app.add_subcommand("validate", "rigorous run of the validation pipeline");
  std::string params_path = "params.cfg", report_path = "report.txt";
  validate->add_option("--torus", torus_path, "torus sampling file");
  validate->add_option("--params", params_path, "parameter file from tune");
  validate->add_option("--report", report_path, "report file to write");
  validate->add_option("--cert", cert_kind, "golden | taumin");
  validate->add_option("--cert-M", cert_M, "resonance cutoff for taumin");

  auto* dioph = app.add_subcommand("dioph", "certify Diophantine constants for the frequency");
  dioph->add_option("--cert-M", cert_M, "resonance cutoff");

  auto* russ = app.add_subcommand("russmann", "small-divisor constants for the frequency");
  std::string deltas_text = "0.1,0.01,0.001,0.0001,0.00001";
  bool classic_only = false;
  russ->add_option("--cert-M", cert_M, "resonance cutoff");
  russ->add_option("--deltas", deltas_text, "comma-separated analyticity losses");
  russ->add_flag("--classic-only", classic_only, "print only the uniform constant");

  auto* plot = app.add_subcommand("plot", "coefficient-decay columns of a torus file");
  plot->add_option("--torus", torus_path, "torus sampling file");

  auto* table = app.add_subcommand("table", "reproduce rows of the published tables");
  std::string which = "dioph1d", rows_text = "1,1";
  table->add_option("--which", which, "dioph1d | dioph2d | russmann1d | russmann2d");
  table->add_option("--rows", rows_text, "semicolon-separated index pairs, e.g. '1,1;1,2'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      Config cfg = Config::load(config_path);
      if (cfg.has("map")) map_name = cfg.get("map");
      if (cfg.has("eps")) eps = std::stod(cfg.get("eps"));
      if (cfg.has("lambda1")) lambda1 = std::stod(cfg.get("lambda1"));
      if (cfg.has("lambda2")) lambda2 = std::stod(cfg.get("lambda2"));
      if (cfg.has("omega")) omega_text = cfg.get("omega");
      if (cfg.has("omega_radius")) omega_radius = cfg.get("omega_radius");
      if (cfg.has("precision")) precision = std::stol(cfg.get("precision"));
    }
    set_default_precision(precision);
    OmegaSpec ospec = parse_omega_spec(omega_text);
    ospec.radius = omega_radius;
    MapModel model = MapModel::create(map_name, eps, lambda1, lambda2);
    N0Strategy strategy = model.default_strategy();

    if (*solve) {
      Real tol_probe = Real::from_string(tol_text, 64);
      if (solver_prec <= 0)
        solver_prec = (tol_probe < Real::from_string("1e-40", 64)) ? 256 : 180;
      if (digits <= 0) digits = static_cast<int>(solver_prec * 0.30103) + 8;
      set_default_precision(solver_prec);
      GridShape shape = parse_grid(grid_text);
      if (shape.n() != model.n())
        throw CLI::ValidationError("--grid", "grid dimension must match the map dimension");
      std::vector<Real> w = omega_floats(ospec, solver_prec);
      ContinuationOptions copt;
      copt.solve.tol = Real::from_string(tol_text, solver_prec);
      copt.solve.num_threads = threads;
      copt.solve.max_grid = max_grid;
      copt.solve.verbose = true;
      copt.eps_step = cont_step;
      copt.seed_branch = seed_branch;
      Torus<Real> sol = solve_by_continuation(model, w, strategy, shape, solver_prec, copt);
      auto E = invariance_error(sol, model, threads);
      write_torus_file(out_path, sol, digits);
      std::printf("wrote %s (grid", out_path.c_str());
      for (int v : sol.shape.N) std::printf(" %d", v);
      std::printf(", %d digits)\n", digits);
      std::printf("final |E|_F0 = %s\n", error_norm_f0(E).to_string(6).c_str());
      return 0;
    }

    if (*tune) {
      DiophantineCert cert = make_cert(cert_kind, ospec, cert_M, precision);
      std::vector<Real> w;
      for (const auto& iw : cert.iomega) w.push_back(iw.mid());
      Torus<Real> K = read_torus_file(torus_path, w, precision);
      if (K.n != model.n()) throw std::runtime_error("torus dimension does not match the map");
      TuneOptions topt;
      topt.a2 = Interval::from_string(a2_text, precision);
      topt.num_threads = threads;
      topt.verbose = true;
      Tuner tuner(model, cert, strategy, topt);
      TuneResult tr = tuner.tune(K);
      Config cfg;
      params_to_config(tr.params, tr.sigma_minus_one, cfg);
      cfg.save(params_out);
      std::printf("wrote %s\n", params_out.c_str());
      std::printf("rho = %s, delta = %s, sigma-1 = %s, d_B = %s, rho_hat = %s\n",
                  tr.params.rho.mid().to_string(7).c_str(),
                  tr.params.delta.mid().to_string(7).c_str(),
                  tr.sigma_minus_one.to_string(7).c_str(),
                  tr.params.d_B.mid().to_string(7).c_str(),
                  tr.params.rho_hat.mid().to_string(7).c_str());
      std::printf("search objective = %s\n", tr.objective.to_string(3).c_str());
      return 0;
    }

    if (*validate) {
      DiophantineCert cert = make_cert(cert_kind, ospec, cert_M, precision);
      KamParams prm = params_from_config(Config::load(params_path), precision);
      GridShape shape;
      int n = 0;
      GridSampling<Interval> samp = read_torus_file_interval(torus_path, shape, n, precision);
      if (n != model.n()) throw std::runtime_error("torus dimension does not match the map");
      Validator v(model, cert, prm, strategy, threads);
      ValidationReport rep = v.validate(samp);
      write_report_file(report_path, rep);
      std::fputs(report_to_text(rep, 6).c_str(), stdout);
      std::printf("report written to %s\n", report_path.c_str());
      return rep.validated ? 0 : 1;
    }

    if (*dioph) {
      DiophantineCert cert = tau_min(omega_intervals(ospec, precision), cert_M);
      std::printf("gamma <= %s, tau >= %s, measure >= %s\n",
                  cert.gamma.lower().to_string(15).c_str(), cert.tau_text.c_str(),
                  cert.measure_lb.lower().to_string(6).c_str());
      std::printf("-- machine block --\n");
      std::printf("gamma = %s\n", cert.gamma.lower().to_string(17).c_str());
      std::printf("tau = %s\n", cert.tau_text.c_str());
      std::printf("measure_lb = %s\n", cert.measure_lb.lower().to_string(17).c_str());
      std::printf("M = %ld\n", cert.M);
      return 0;
    }

    if (*russ) {
      DiophantineCert cert = tau_min(omega_intervals(ospec, precision), cert_M);
      RussmannInput in{cert.iomega, cert.gamma, cert.tau, Interval::point(1L, precision), 0};
      Interval classic = russmann_cR(in);
      std::printf("gamma <= %s, tau >= %s\n", cert.gamma.lower().to_string(15).c_str(),
                  cert.tau_text.c_str());
      std::printf("cR(L=0) = %s\n", classic.upper().to_string(9).c_str());
      if (!classic_only) {
        std::istringstream ds(deltas_text);
        std::string tok;
        while (std::getline(ds, tok, ',')) {
          if (tok.empty()) continue;
          Interval delta = Interval::from_string(tok, precision);
          long L = 0;
          Interval cr =
              russmann_cR_auto(cert.iomega, cert.gamma, cert.tau, delta, 100000, 1e-2, &L);
          std::printf("cR(delta=%s, L=%ld) = %s\n", tok.c_str(), L,
                      cr.upper().to_string(9).c_str());
        }
      }
      return 0;
    }

    if (*plot) {
      GridShape shape;
      int n = 0;
      GridSampling<Interval> samp = read_torus_file_interval(torus_path, shape, n, precision);
      GridSampling<Real> g(shape, 2 * n, precision);
      for (int c = 0; c < 2 * n; ++c)
        for (long f = 0; f < shape.total(); ++f) g.comps[c][f] = samp.comps[c][f].mid();
      auto series = fft_forward(g);
      std::printf("# idx k");
      for (int c = 0; c < 2 * n; ++c) std::printf(" |K%d_k|", c);
      std::printf("\n");
      for (long i = 0; i < shape.total(); ++i) {
        auto j = shape.unflatten(i);
        std::printf("%ld", i);
        for (int ax = 0; ax < n; ++ax) std::printf(" %d", GridShape::freq(j[ax], shape.N[ax]));
        for (int c = 0; c < 2 * n; ++c) {
          const auto& z = series.comps[c][i];
          std::printf(" %.6e", sqrt(z.re * z.re + z.im * z.im).to_double());
        }
        std::printf("\n");
      }
      return 0;
    }

    if (*table) {
      std::istringstream rows(rows_text);
      std::string row;
      while (std::getline(rows, row, ';')) {
        int a = 0, b = 0;
        if (std::sscanf(row.c_str(), "%d,%d", &a, &b) != 2)
          throw CLI::ValidationError("--rows", "expected pairs like '1,1;1,2'");
        std::vector<Interval> iw;
        if (which == "dioph2d" || which == "russmann2d") {
          Interval pad = Interval::point(1L, precision).mul_2exp(-50);
          Interval wa = sqrt(Interval::point(static_cast<long>(a), precision)) -
                        Interval::point(static_cast<long>(std::floor(std::sqrt(a))), precision);
          Interval wb = sqrt(Interval::point(static_cast<long>(b), precision)) -
                        Interval::point(static_cast<long>(std::floor(std::sqrt(b))), precision);
          iw = {hull(wa - pad, wa + pad), hull(wb - pad, wb + pad)};
        } else {
          OmegaSpec rs;
          rs.kind = "quadratic";
          rs.qa = a;
          rs.qb = b;
          iw = omega_intervals(rs, precision);
        }
        DiophantineCert cert = tau_min(iw, cert_M);
        std::printf("%d %d gamma <= %s tau >= %s", a, b,
                    cert.gamma.lower().to_string(15).c_str(), cert.tau_text.c_str());
        if (which == "russmann1d" || which == "russmann2d") {
          RussmannInput in{cert.iomega, cert.gamma, cert.tau, Interval::point(1L, precision), 0};
          std::printf(" cR(L=0) = %s", russmann_cR(in).upper().to_string(9).c_str());
          for (const char* d : {"0.1", "0.01", "0.001"}) {
            Interval cr = russmann_cR_auto(cert.iomega, cert.gamma, cert.tau,
                                           Interval::from_string(d, precision));
            std::printf(" cR(%s) = %s", d, cr.upper().to_string(9).c_str());
          }
        }
        std::printf("\n");
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
