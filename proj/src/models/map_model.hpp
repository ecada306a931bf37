#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "prec/interval.hpp"
#include "prec/mat.hpp"
#include "prec/real.hpp"

namespace kam {

struct StrategyMismatch : std::runtime_error {
  explicit StrategyMismatch(const std::string& m) : std::runtime_error(m) {}
};

enum class MapKind { Standard, NonTwist, Froeschle };

enum class N0Strategy { ConstantVertical, Omega0DK };

// Complex-box radii for the two validation domains: angle components carry
// d_B + rho + ||K_p^x||_{F,rho} (resp. rhohat without margin), action
// components d_B + ||K_p^y||_{F,rho}.
struct DomainBox {
  std::vector<Interval> r;      // 2n radii of the inner domain
  std::vector<Interval> r_hat;  // 2n radii of the outer domain
};

// Closed-form bounds of the map over a DomainBox plus the constant ambient
// structure bounds (all three models use the standard symplectic form).
struct GlobalBounds {
  Interval c_DF, c_D2F, c_Fp_hat;
  Interval c_Omega, c_DOmega, c_Da, c_D2a, c_Omega_hat;
};

// Exact symplectic map with pointwise evaluators and closed-form global
// bounds. All models are entire, homotopic to the identity, and use the
// standard structure; adding a map means providing the three evaluators, the
// global-bound closures and the structure constants.
class MapModel {
 public:
  static MapModel create(const std::string& name, double eps, double lambda1 = 0.0,
                         double lambda2 = 0.0);
  static MapModel create(MapKind kind, double eps, double lambda1 = 0.0, double lambda2 = 0.0);

  MapKind kind() const { return kind_; }
  int n() const { return n_; }          // torus dimension
  int dim() const { return 2 * n_; }    // phase-space dimension
  std::string name() const;
  double eps() const { return eps_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  void set_eps(double e) { eps_ = e; }
  void set_lambdas(double l1, double l2) { lambda1_ = l1; lambda2_ = l2; }

  // F_p(z) = F(z) - (x, 0): the periodic part of the map at a phase point.
  template <typename T>
  std::vector<T> eval_Fp(const std::vector<T>& z, long prec) const;
  template <typename T>
  Mat<T> eval_DF(const std::vector<T>& z, long prec) const;
  // Second derivative as dim() matrices: component i holds d^2 F_i.
  template <typename T>
  std::vector<Mat<T>> eval_D2F(const std::vector<T>& z, long prec) const;

  // Standard symplectic structure, constant over phase space.
  template <typename T>
  Mat<T> omega0(long prec) const;

  GlobalBounds global_bounds(const DomainBox& box, long prec) const;

  N0Strategy default_strategy() const {
    return kind_ == MapKind::Standard ? N0Strategy::ConstantVertical : N0Strategy::Omega0DK;
  }

 private:
  MapModel(MapKind kind, int n, double eps, double l1, double l2)
      : kind_(kind), n_(n), eps_(eps), lambda1_(l1), lambda2_(l2) {}
  MapKind kind_;
  int n_;
  double eps_, lambda1_, lambda2_;
};

}  // namespace kam
