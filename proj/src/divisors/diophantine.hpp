#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "prec/interval.hpp"

namespace kam {

struct ResonantInterval : std::runtime_error {
  std::vector<long> k;
  explicit ResonantInterval(std::vector<long> k_)
      : std::runtime_error("interval frequency hits a resonance"), k(std::move(k_)) {}
};
struct GammaTooLarge : std::runtime_error {
  GammaTooLarge() : std::runtime_error("gamma exceeds the certified gamma_M") {}
};

// Certified Diophantine constants for an interval frequency vector: every
// resonance |k|_1 <= M keeps |k.omega - m| |k|_1^tau >= gamma over the whole
// interval, and a positive fraction of frequencies in the interval is
// (gamma, tau)-Diophantine.
struct DiophantineCert {
  std::vector<Interval> iomega;
  Interval gamma;         // certified lower bound (thin interval)
  Interval tau;           // enclosure of the reported exponent
  std::string tau_text;   // two-decimal form, rounded up
  long M = 0;
  Interval measure_lb;    // lower bound of the relative measure, if from_tau_min
  Interval C_iomega;      // geometry constant of the measure estimate
  bool from_tau_min = false;
  int n() const { return static_cast<int>(iomega.size()); }
};

// Per-order minimal distances to resonances: entry L holds a certified lower
// bound of min { |k.omega - m| : |k|_1 = L, omega in iomega, m integer }.
// Computed once and reused across tau evaluations.
struct ResonanceTable {
  long M = 0;
  std::vector<Real> dmin;  // index 1..M (index 0 unused)
};

ResonanceTable build_resonance_table(const std::vector<Interval>& iomega, long M);

// Lower bound of gamma_M(iomega, tau) = min |k.omega - m| |k|_1^tau over
// 0 < |k|_1 <= M. Throws ResonantInterval when some k.iomega contains an
// integer.
Interval gamma_lower(const std::vector<Interval>& iomega, const Interval& tau, long M);
Real gamma_lower_from_table(const ResonanceTable& tbl, const Real& tau);

// geometry constant C(iomega, n) = 2^{2n}/(n-1)! * diam^n / meas.
Interval measure_geometry_constant(const std::vector<Interval>& iomega);

// Smallest exponent with a positive-measure guarantee at cutoff M: root of
// 1 - C gamma_M(tau) / ((tau - n) M^{tau-n}), bisected to 1e-3 and rounded up
// to two decimals; gamma is re-evaluated at the reported exponent.
DiophantineCert tau_min(const std::vector<Interval>& iomega, long M);

// Lower bound of the relative measure of (gamma, tau)-Diophantine vectors in
// cert.iomega for gamma <= cert.gamma.
Interval measure_lower_bound(const DiophantineCert& cert, const Interval& gamma);

// Ready-made certificate for the golden mean: gamma = (3 - sqrt 5)/2, tau = 1.
DiophantineCert golden_cert(long prec = 0);

}  // namespace kam
