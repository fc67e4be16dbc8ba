#pragma once

#include <utility>

#include "derham/moebius.hpp"

namespace derham {

/// A pair (A0, A1) admitted by conditions (A1)-(A3), with the derived
/// constants
///   alpha = min{0, c0/(d0-a0), c1/b1},  beta = max of the same,
///   gamma = 1/Phi(A0; 1) > 1.
/// Matrices are stored exactly as given. Only `validate` constructs one.
class DeRhamSystem {
 public:
  const MoebiusMatrix& a0() const noexcept { return a0_; }
  const MoebiusMatrix& a1() const noexcept { return a1_; }
  const MoebiusMatrix& matrix(int digit) const noexcept { return digit == 0 ? a0_ : a1_; }
  /// Transposed maps, which drive the ratio state r_n/s_n.
  const MoebiusMatrix& transposed(int digit) const noexcept { return digit == 0 ? t0_ : t1_; }

  const Scalar& alpha() const noexcept { return alpha_; }
  const Scalar& beta() const noexcept { return beta_; }
  const Scalar& gamma() const noexcept { return gamma_; }
  Mode mode() const noexcept { return mode_; }

  /// Re-validated copy with every entry converted to `mode`.
  DeRhamSystem to_mode(Mode mode) const;

  /// Absolute tolerance used for equality checks on approximate input.
  static constexpr double kApproxEqualityTol = 1e-9;

 private:
  friend DeRhamSystem validate(const MoebiusMatrix&, const MoebiusMatrix&);
  DeRhamSystem() = default;

  MoebiusMatrix a0_, a1_, t0_, t1_;
  Scalar alpha_, beta_, gamma_;
  Mode mode_ = Mode::exact;
};

/// Checks (A1)-(A3) and computes alpha, beta, gamma. Any approximate entry
/// puts the whole system in approximate mode. Throws ValidationError listing
/// every violated condition.
DeRhamSystem validate(const MoebiusMatrix& a0, const MoebiusMatrix& a1);

/// p0(x) = (x + 1)/(x + gamma). Throws DomainError for x <= -gamma.
Scalar p0(const DeRhamSystem& sys, const Scalar& x);
inline Scalar p1(const DeRhamSystem& sys, const Scalar& x) { return Scalar(1) - p0(sys, x); }

/// Binary entropy in nats, s(0) = s(1) = 0. Always approximate.
/// Throws DomainError outside [0, 1].
Scalar entropy(const Scalar& p);
double entropy(double p);

struct FixedPoints {
  Scalar transposed0;                       // c0/(d0 - a0)
  std::pair<Scalar, Scalar> transposed1;    // (-1, c1/b1)
};

/// Fixed points of Phi(tA0; .) and Phi(tA1; .), verified by substitution.
FixedPoints fixed_points(const DeRhamSystem& sys);

}  // namespace derham
