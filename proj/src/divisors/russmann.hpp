#pragma once

#include <stdexcept>
#include <vector>

#include "prec/interval.hpp"

namespace kam {

struct TailConditionViolated : std::runtime_error {
  TailConditionViolated()
      : std::runtime_error("russmann tail bound needs 4 pi delta (L+1) > 2 tau") {}
};

// Upper enclosure of the Hurwitz zeta value zeta(2, b) = sum_{j>=0} (b+j)^-2,
// b > 0: explicit terms plus a two-sided integral tail enclosure, term count
// adapted until the tail enclosure is negligible.
Interval hurwitz_zeta2_upper(const Interval& b);

// Fixed-term variant: J explicit terms plus the one-sided tail bound
// 1/(b+J-1). Slightly looser; J = 1000 reproduces the published constant
// tables bit-for-bit and is the policy used inside russmann_cR.
Interval hurwitz_zeta2_upper_fixedJ(const Interval& b, long J);

struct RussmannInput {
  std::vector<Interval> iomega;
  Interval gamma, tau, delta;
  long L = 0;  // 0 selects the classic uniform constant
  int n() const { return static_cast<int>(iomega.size()); }
};

// Rigorous upper bound of the small-divisor constant c_R(delta) entering
// ||R v||_{rho-delta} <= c_R(delta) / (gamma delta^tau) ||v||_rho. With L = 0
// this is the classic uniform constant; L > 0 evaluates the first divisors
// explicitly over the interval frequency and bounds the tail by an
// incomplete-gamma estimate.
Interval russmann_cR(const RussmannInput& in);

// Policy: start at L0 = ceil(tau / (2 pi delta)) + 1 and double L until the
// relative change of the bound drops below reltol; capped. Returns the best
// (smallest) certified bound seen.
Interval russmann_cR_auto(const std::vector<Interval>& iomega, const Interval& gamma,
                          const Interval& tau, const Interval& delta, long cap = 100000,
                          double reltol = 1e-2, long* L_used = nullptr);

}  // namespace kam
