#pragma once

#include "prec/interval.hpp"
#include "prec/mat.hpp"
#include "prec/real.hpp"

namespace kam {

// Inputs of the final constant chain: certified bounds from the earlier
// steps, the Diophantine pair, the strip/loss parameters, and the global
// model bounds. Shared between the rigorous run (T = Interval) and the
// tuner's float evaluation (T = Real, grid-error constants set to zero).
template <typename T>
struct ChainInputs {
  int n = 1;
  T gamma, tau;
  T rho, delta, sigma, d_B;
  T a1, a3;
  T c_R;
  // model / structure bounds
  T c_Omega, c_DOmega, c_Da, c_D2a, c_DF, c_D2F;
  // transversal-field bounds
  T c_N0, c_N0t, c_N0_Om_N0;
  // torus bounds
  T b_E, b_DK, b_DKt, b_B, b_T;
};

// Every constant of the final assembly, in evaluation order. lhs < 1 is the
// existence condition; closeness bounds the distance to the true torus.
template <typename T>
struct Chain {
  T sigma_DK, sigma_DKt, sigma_B, sigma_T;
  T c_A, c_N, c_Nt, c_P, c_T;
  T beta1, beta2, beta3, beta4, beta5, sigma_star;
  T C1, C2, C3, C4, C5, C6, C7, C8, C9, C10;
  T C2hat, C15, C5hat;
  T frak1, frak2, frak3, frak4, frak5, lagrangian_term;
  T lhs, closeness;
};

template <typename T>
Chain<T> evaluate_chain(const ChainInputs<T>& in);

}  // namespace kam
