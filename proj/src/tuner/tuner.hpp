#pragma once

#include "solver/newton.hpp"
#include "validator/validator.hpp"

namespace kam {

struct TorusTooRough : std::runtime_error {
  explicit TorusTooRough(const std::string& m) : std::runtime_error(m) {}
};
struct NoFixedPoint : std::runtime_error {
  explicit NoFixedPoint(const std::string& m) : std::runtime_error(m) {}
};
struct InvalidError : std::runtime_error {
  explicit InvalidError(const std::string& m) : std::runtime_error(m) {}
};

// First strip-width guess: rho_0 = -log(||E||_{F,0}) / (2 pi N), N the
// largest grid size.
Real initial_rho(const Real& error_norm_f0, const GridShape& N);

struct TuneOptions {
  Interval a2;                 // carried into the emitted parameters
  int delta_scan = 9;          // points in [rho/6.5, rho/4.5]
  double rho_shrink = 0.85;
  int rhohat_scan = 16;        // geometric points in (1.5 rho, 200 rho]
  double rhohat_span_lo = 1.5;
  double rhohat_span_hi = 200.0;
  long russmann_cap = 20000;   // search-time cap; the validator re-derives c_R
  int max_rho_steps = 120;
  int max_failed_rho_steps = 4;
  int num_threads = 1;
  bool verbose = false;
  TuneOptions() : a2(Interval::point(1000L)) {}
};

struct TuneResult {
  KamParams params;
  Real objective;        // frak1 gamma^-4 rho^-4tau b_E at the chosen point
  Real sigma_minus_one;
};

// Heuristic (float) selection of rho, delta, sigma, d_B and rho_hat for a
// candidate torus: scans rho downward, solving the two balance equations for
// (sigma, d_B) at each delta by a damped fixed point, then picks rho_hat with
// the grid-error constant restored. Never affects soundness; the validator
// re-derives every bound rigorously.
class Tuner {
 public:
  Tuner(MapModel model, DiophantineCert cert, N0Strategy strategy, TuneOptions opt);

  TuneResult tune(const Torus<Real>& K) const;

  // The balance-equation solver at fixed (rho, delta); exposed for tests.
  // Returns (sigma - 1, d_B) and writes the search objective.
  struct BalancePoint {
    Real sigma_minus_one, d_B, objective;
    Chain<Real> chain;
  };
  BalancePoint solve_sigma_dB(const Torus<Real>& K, const TorusFrame<Real>& fr,
                              const FourierSeries<Real>& E_series, const Real& rho,
                              const Real& delta) const;

 private:
  MapModel model_;
  DiophantineCert cert_;
  N0Strategy strategy_;
  TuneOptions opt_;
};

}  // namespace kam
