#pragma once

#include "solver/frame.hpp"

namespace kam {

struct DivergenceDetected : std::runtime_error {
  explicit DivergenceDetected(const std::string& m) : std::runtime_error(m) {}
};
struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& m) : std::runtime_error(m) {}
};

struct NewtonDiagnostics {
  Real solvability_residual;  // |<eta_L - T xi_N>| after fixing the average
  Real new_error;
};

// One correction K' = K + P xi of the linearized invariance equation: xi_N
// from the lower cohomological equation with its average fixed through the
// torsion average, then xi_L from the upper equation with zero average.
Torus<Real> newton_step(const Torus<Real>& K, const MapModel& model, N0Strategy strategy,
                        NewtonDiagnostics* diag = nullptr, int num_threads = 1);

struct SolveOptions {
  Real tol;
  int max_iter = 40;
  long max_grid = 1 << 22;
  double tail_fraction = 1e-2;  // grid doubles when band mass exceeds tail_fraction * tol
  int num_threads = 1;
  bool verbose = false;
};

// Newton iteration with automatic grid doubling when the top-quarter mode
// band carries too much mass for the downstream band-zeroing step.
Torus<Real> solve_torus(Torus<Real> K, const MapModel& model, N0Strategy strategy,
                        const SolveOptions& opt);

// Drive the map parameters from an integrable start to the target in steps,
// re-solving at each stage; steps that fail to converge are bisected.
struct ContinuationOptions {
  SolveOptions solve;
  double eps_step = 0.02;
  double min_step = 1e-4;
  int seed_branch = +1;
};

Torus<Real> solve_by_continuation(const MapModel& target, const std::vector<Real>& omega,
                                  N0Strategy strategy, const GridShape& initial_shape, long prec,
                                  const ContinuationOptions& opt);

// Mass of the top-quarter coefficient band, the part zeroed by the rigorous
// preparation step.
Real tail_band_mass(const FourierSeries<Real>& f);

// Sup-norm style residual of the frame reducibility identity on the grid,
// used by tests and diagnostics.
Real reducibility_residual(const Torus<Real>& K, const MapModel& model, N0Strategy strategy);

}  // namespace kam
