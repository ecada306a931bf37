#pragma once

#include <stdexcept>
#include <vector>

#include "fourier/fft.hpp"
#include "prec/interval.hpp"

namespace kam {

struct InvalidStrip : std::runtime_error {
  explicit InvalidStrip(const std::string& m) : std::runtime_error(m) {}
};
struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& m) : std::runtime_error(m) {}
};
struct NeumannFailure : std::runtime_error {
  explicit NeumannFailure(const std::string& m) : std::runtime_error(m) {}
};

// Coefficient aliasing bound: |f~_k - f_k| <= s_star(k, rhohat) * ||f||_rhohat
// for analytic f on the strip of width rhohat, sampled on the grid N.
Interval alias_coeff_bound(const std::vector<int>& k, const Interval& rhohat,
                           const GridShape& N);

// Rigorous constants bounding ||f~ - f||_rho <= C_N(rho, rhohat) ||f||_rhohat.
// The three pieces: aliasing of kept modes split in two sums plus the
// truncation tail of discarded modes. All entries are upper enclosures.
struct ErrorConstants {
  Interval rho, rhohat;
  GridShape N;
  Interval S1, S2, TN, CN;
};

ErrorConstants approx_error_constant(const Interval& rho, const Interval& rhohat,
                                     const GridShape& N);

// ||AB - (AB)~||_rho <= C_N(rho,rhohat) ||A||_{F,rhohat} ||B||_{F,rhohat} for
// truncated series A, B multiplied on the grid.
Interval product_error_bound(const MatSeries<Interval>& a, const MatSeries<Interval>& b,
                             const ErrorConstants& cn);

// Certificate for a grid-inverted matrix series: bound of ||I - A X~||_rho and
// the Neumann correction ||A^{-1} - X~||_rho <= ||X~|| ||E|| / (1 - ||E||).
struct InverseCertificate {
  Interval residual_norm;  // bound of ||I - A X~||_rho
  Interval correction;     // bound of ||A^{-1} - X~||_rho
};

InverseCertificate inverse_certificate(const MatSeries<Interval>& a,
                                       const MatSeries<Interval>& x, const ErrorConstants& cn);

// Internals exposed for the table-reproduction tests.
Interval dft_mu(int N, const Interval& delta);
Interval dft_nu(int N, const Interval& delta);
// 1 - prod(1 - x_l) evaluated by inclusion-exclusion to avoid cancellation.
Interval one_minus_prod(const std::vector<Interval>& xs);

}  // namespace kam
