#include "validator/ledger.hpp"

namespace kam {

template <typename T>
Chain<T> evaluate_chain(const ChainInputs<T>& in) {
  using S = ScalarTraits<T>;
  const long p = default_precision();
  auto L = [&](long v) { return S::from_long(v, p); };
  const T one = L(1), two = L(2), half = S::from_double(0.5, p);
  const T nn = L(in.n);
  const bool planar = (in.n == 1);

  Chain<T> c;
  c.sigma_DK = in.b_DK * in.sigma;
  c.sigma_DKt = in.b_DKt * in.sigma;
  c.sigma_B = in.b_B * in.sigma;
  c.sigma_T = in.b_T * in.sigma;

  const T cW = planar ? L(0) : in.c_N0_Om_N0;
  c.c_A = planar ? L(0) : half * nn * cW * c.sigma_B * c.sigma_B;
  c.c_N = c.sigma_DK * c.c_A + in.c_N0 * c.sigma_B;
  c.c_Nt = c.c_A * c.sigma_DKt + nn * c.sigma_B * in.c_N0t;

  c.beta1 = two * c.sigma_B * c.sigma_B * in.c_N0 *
            (c.sigma_DKt * in.c_DOmega * in.delta + two * nn * in.c_Omega);
  c.beta2 = planar ? L(0)
                   : half * nn * c.sigma_B * c.sigma_B * in.c_DOmega * in.delta +
                         half * (nn + one) * cW * c.beta1;
  c.beta3 = c.sigma_DK * c.beta2 + nn * c.c_A + in.c_N0 * c.beta1;
  c.beta4 = c.sigma_DKt * c.beta2 + two * nn * c.c_A + nn * in.c_N0t * c.beta1;
  c.beta5 = two * c.sigma_T * c.sigma_T *
            (c.c_Nt * c.c_N * (in.c_Omega * in.c_D2F + in.c_DOmega * in.c_DF) * in.delta +
             in.c_Omega * in.c_DF * (c.c_Nt * c.beta3 + c.c_N * c.beta4));
  c.sigma_star = S::tmax(S::tmax(nn / in.b_DK, two * nn / in.b_DKt),
                         S::tmax(c.beta1 / in.b_B, c.beta5 / in.b_T));

  c.c_P = c.sigma_DK + c.c_N;
  c.c_T = c.c_Nt * in.c_Omega * in.c_DF * c.c_N;

  c.C1 = planar ? L(0)
                : c.sigma_DKt * c.sigma_DK * in.c_DOmega * in.delta +
                      nn * c.sigma_DKt * in.c_Omega +
                      two * nn * in.c_Omega * in.c_DF * c.sigma_DK;
  c.C2 = in.c_R * c.C1;
  c.C3 = (one + c.c_A) * S::tmax(one, c.c_A) * c.C2;

  const T gdt = in.gamma * pow(in.delta, in.tau);
  c.C4 = nn * c.c_Nt * in.c_Omega * gdt + c.c_A * c.C2;
  c.C5 = c.C2 + nn * c.sigma_DKt * in.c_Omega * gdt;
  c.C6 = c.c_A * c.C2 +
         c.sigma_DKt * in.c_DOmega * in.c_DF * c.c_N * in.gamma * pow(in.delta, in.tau + one) +
         two * nn * in.c_Omega * in.c_DF * c.c_N * gdt;
  c.C7 = S::tmax(c.C4, c.C5 + c.C6);
  c.C8 = two * in.c_R * c.sigma_DKt * in.c_Omega;
  c.C9 = c.C8 + c.sigma_T * (c.c_Nt * in.c_Omega * gdt + c.c_T * c.C8);
  c.C10 = in.c_R * (c.c_Nt * in.c_Omega * gdt + c.c_T * c.C9);
  c.C2hat = c.sigma_DK * c.C10 + c.c_N * c.C9 * gdt;

  const T g3 = pow(in.gamma, 3L);
  c.C15 = (c.C3 + c.C7) * S::tmax(c.C9 * gdt, c.C10) +
          two * nn * in.c_Da * g3 * pow(in.delta, L(3) * in.tau) +
          half * in.c_D2a * g3 * pow(in.delta, L(3) * in.tau + one);
  c.C5hat = two * c.c_P * c.C15 * in.gamma * pow(in.delta, in.tau - one) +
            half * in.c_D2F * c.C2hat * c.C2hat;

  const T sm1 = in.sigma - one;
  const T twotau = in.tau.mul_2exp(1);
  const T a1_pow_1m2t = pow(in.a1, one - twotau);
  const T a1_pow_m2t = pow(in.a1, -twotau);
  c.frak3 = pow(in.a1 * in.a3, L(4) * in.tau) * c.C5hat;
  c.frak4 = c.sigma_star * pow(in.a3, twotau + one) * in.gamma * in.gamma *
            pow(in.rho, twotau - one) * c.C2hat / (sm1 * (one - a1_pow_1m2t));
  c.frak5 = pow(in.a3, twotau) * in.gamma * in.gamma * pow(in.rho, twotau) * c.C2hat /
            (in.d_B * (one - a1_pow_m2t));
  c.lagrangian_term =
      two * pow(in.a3, in.tau + one) * g3 * pow(in.rho, L(3) * in.tau - one) * c.C3;
  c.frak1 = S::tmax(S::tmax(c.lagrangian_term, c.frak3), S::tmax(c.frak4, c.frak5));
  c.frak2 = pow(in.a3, twotau) * c.C2hat / (one - a1_pow_1m2t);

  c.lhs = c.frak1 * in.b_E / (pow(in.gamma, 4L) * pow(in.rho, L(4) * in.tau));
  c.closeness = c.frak2 * in.b_E / (in.gamma * in.gamma * pow(in.rho, twotau));
  return c;
}

template Chain<Real> evaluate_chain<Real>(const ChainInputs<Real>&);
template Chain<Interval> evaluate_chain<Interval>(const ChainInputs<Interval>&);

}  // namespace kam
