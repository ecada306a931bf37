#pragma once

#include <stdexcept>

#include "solver/torus.hpp"

namespace kam {

struct DegenerateFrame : std::runtime_error {
  explicit DegenerateFrame(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateTorsion : std::runtime_error {
  explicit DegenerateTorsion(const std::string& m) : std::runtime_error(m) {}
};

// Symplectic frame along the torus: tangent block DK, transversal block
// N = DK A + N0 B with B = -(DK^T Omega N0)^{-1}, and the torsion
// T(theta) = N(theta+omega)^T Omega DF(K(theta)) N(theta). Grids and series
// are kept side by side; shifted blocks are evaluated through Fourier space.
template <typename T>
struct TorusFrame {
  MatSeries<T> DK_series;   // 2n x n
  MatGrid<T> DK_grid;
  MatGrid<T> DK_shift_grid;
  MatGrid<T> N0_grid;       // 2n x n
  MatSeries<T> N0_series;
  MatGrid<T> B_grid;        // n x n
  MatSeries<T> B_series;
  MatGrid<T> A_grid;        // n x n
  MatGrid<T> N_grid;        // 2n x n
  MatSeries<T> N_series;
  MatGrid<T> N_shift_grid;
  MatGrid<T> DFK_grid;      // 2n x 2n
  MatGrid<T> T_grid;        // n x n
  Mat<T> T_avg;             // grid average of the torsion
};

template <typename T>
TorusFrame<T> build_frame(const Torus<T>& K, const MapModel& model, N0Strategy strategy,
                          int num_threads = 1);

// Invariance error E(theta) = F(K(theta)) - K(theta+omega) evaluated as the
// periodic-part formula: grid composition for F_p o K and a Fourier-space
// rotation for K_p o T_omega. Returns grid and series.
template <typename T>
struct InvarianceError {
  GridSampling<T> grid;
  FourierSeries<T> series;
};

template <typename T>
InvarianceError<T> invariance_error(const Torus<T>& K, const MapModel& model,
                                    int num_threads = 1);

// ||E||_{F,0} of a computed error, the solver's convergence measure.
Real error_norm_f0(const InvarianceError<Real>& e);

}  // namespace kam
