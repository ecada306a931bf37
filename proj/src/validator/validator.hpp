#pragma once

#include <string>

#include "divisors/diophantine.hpp"
#include "fourier/dft_bounds.hpp"
#include "solver/frame.hpp"
#include "validator/ledger.hpp"

namespace kam {

struct TorsionDegenerate : std::runtime_error {
  explicit TorsionDegenerate(const std::string& m) : std::runtime_error(m) {}
};

// Strip widths, inflation factor and domain margin of a rigorous run. The
// analyticity-loss schedule is tied to a3 = rho/delta and the user's a2
// through a3 = 3 a1 a2 / ((a1-1)(a2-1)).
struct KamParams {
  Interval rho, delta, sigma, rho_hat, d_B;
  Interval a2;
  long precision = 267;
  long L_cap = 100000;
  double L_reltol = 1e-2;

  Interval a3() const { return rho / delta; }
  Interval a1() const {
    Interval one = Interval::point(1L, precision);
    Interval t = a3() * (a2 - one);
    return t / (t - Interval::point(3L, precision) * a2);
  }
  Interval rho_inf() const { return rho / a2; }
  void check() const;
};

// Certified quantities produced along the pipeline, reported field by field.
struct StepBounds {
  DomainBox box;
  GlobalBounds gb;
  Interval Kx_norm_rho, Ky_norm_rho, Kx_norm_rhohat, Ky_norm_rhohat;
  ErrorConstants cn;
  Interval E_series_norm, b_E;
  Interval b_DK, b_DKt, b_B, b_A, b_N, b_Nt, t_B;
  Interval c_N0, c_N0t, c_N0_hat, c_N0t_hat, c_N0_Om_N0;
  Interval s_star_0, T0_inv_norm, t_T, b_T;
  Interval c_R;
  long L_used = 0;
};

struct ValidationReport {
  bool validated = false;
  std::string failing_step;   // empty when the pipeline completed
  std::string failure_reason;
  Interval lhs, closeness, rho_inf;
  Chain<Interval> chain;
  StepBounds bounds;
  DiophantineCert cert;
  KamParams params;
  GridShape grid;
  std::string model_name;
  double seconds = 0.0;
  bool has_measure = false;
  Interval measure_lb;
};

class Validator {
 public:
  Validator(MapModel model, DiophantineCert cert, KamParams params, N0Strategy strategy,
            int num_threads = 1);

  // Full pipeline on a raw torus sampling; errors from intermediate steps are
  // converted into a failed report naming the step.
  ValidationReport validate(const GridSampling<Interval>& sampling) const;

  // Individual steps (throwing versions), exposed for tests and diagnostics.
  Torus<Interval> step0_prepare(const GridSampling<Interval>& sampling, StepBounds& sb) const;
  void step1_error_bound(const Torus<Interval>& K, StepBounds& sb) const;
  TorusFrame<Interval> step2_frame_bounds(const Torus<Interval>& K, StepBounds& sb) const;
  void step3_torsion(const TorusFrame<Interval>& fr, StepBounds& sb) const;
  Chain<Interval> step4_ledger(const StepBounds& sb) const;

  const MapModel& model() const { return model_; }
  const KamParams& params() const { return params_; }

 private:
  MapModel model_;
  DiophantineCert cert_;
  KamParams params_;
  N0Strategy strategy_;
  int num_threads_;
};

// Report serialization: human-readable text plus a machine key=value block.
std::string report_to_text(const ValidationReport& r, int digits = 12);
void write_report_file(const std::string& path, const ValidationReport& r);

}  // namespace kam
