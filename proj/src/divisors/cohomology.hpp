#pragma once

#include <stdexcept>
#include <vector>

#include "fourier/fft.hpp"
#include "prec/real.hpp"

namespace kam {

struct NearResonance : std::runtime_error {
  explicit NearResonance(const std::string& m) : std::runtime_error(m) {}
};

// Zero-average solution of u - u o T_omega = v - <v> on the truncated series:
// u_k = v_k / (1 - e^{2 pi i k.omega}), u_0 = 0. Float path for the Newton
// solver; throws NearResonance when a divisor magnitude drops below 1e-14.
FourierSeries<Real> solve_cohomological_float(const FourierSeries<Real>& v,
                                              const std::vector<Real>& omega);

}  // namespace kam
