#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "derham/system.hpp"

namespace derham {

/// Entropy bounds of the local dimension of mu_f, in nats, with their
/// dimension counterparts (divided by log 2).
struct DimensionBounds {
  double theta1 = 0.0;  // max of s(p0(y)) over [alpha, beta]
  double theta2 = 0.0;  // min of s(p0(y)) over [alpha, beta]
  double dim_upper = 0.0;
  double dim_lower = 0.0;
  Scalar argmax_location;  // where theta1 is attained
};

/// Closed-form extrema of y -> s(p0(y)) on [alpha, beta]. The map rises up to
/// gamma - 2 (where p0 = 1/2) and falls after it.
DimensionBounds dimension_bounds(const DeRhamSystem& sys);

/// Relative tolerance for conditions (i), (ii) on approximate input. The
/// conditions are homogeneous of degree 2, so the tolerance is scaled by the
/// squared largest entry of the matrix involved.
inline constexpr double kConditionRelTol = 1e-9;

/// (c0 + d0 - 2a0)(d0 - a0) = a0 c0
bool condition_i(const DeRhamSystem& sys);
/// (a1 - 2c1)(d1 - 2b1) = b1 c1
bool condition_ii(const DeRhamSystem& sys);

struct AbsolutelyContinuous {
  Scalar c0norm;  // c0/d0; density (1 + 2c)/(-2c x + 1 + 2c)^2
};

struct Singular {
  DimensionBounds bounds;
  std::optional<double> defect_bound;  // present when condition (i) fails
};

struct ClassificationReport {
  bool condition_i = false;
  bool condition_ii = false;
  std::variant<AbsolutelyContinuous, Singular> verdict;
  Mode exactness = Mode::exact;

  bool absolutely_continuous() const {
    return std::holds_alternative<AbsolutelyContinuous>(verdict);
  }
};

/// Absolutely continuous iff (i) and (ii) hold. Exact systems get an exact
/// verdict; approximate ones are decided within kConditionRelTol and flagged.
ClassificationReport classify(const DeRhamSystem& sys);

/// Radius eps0 in (0, 2(gamma - 1)) such that |Phi(tA0; z) - (gamma-2)| > eps0
/// whenever |z - (gamma-2)| <= eps0. Phi(tA0; .) is affine with slope a0/d0,
/// so with delta = |Phi(tA0; gamma-2) - (gamma-2)|,
///   eps0 = (1 - 2^-20) min(delta/(1 + a0/d0), (1 - 2^-20) 2(gamma - 1)),
/// re-checked at both ends of the interval.
/// Throws ConditionHoldsError when condition (i) holds.
Scalar epsilon0(const DeRhamSystem& sys);

/// Upper bound < 1 on the dimension of a full-measure set when (i) fails:
///   (log 2 - (log 2 - e0) p0(alpha)/2) / log 2,
///   e0 = max(s(p0(gamma-2+eps0)), s(p0(gamma-2-eps0))).
/// `eps0` defaults to epsilon0(sys); any admissible smaller radius is accepted.
double singular_dim_upper_bound(const DeRhamSystem& sys);
double singular_dim_upper_bound(const DeRhamSystem& sys, const Scalar& eps0);

/// Normalized matrices of an absolutely continuous system:
///   A0/d0 = ((1/2, 0), (c0, 1)),  A1/b1 = ((4c0 + 1, 1), (2c0, 2(1 + c0))).
struct NormalForm {
  MoebiusMatrix a0;
  MoebiusMatrix a1;
  Scalar c0;
};

/// Throws PreconditionError for singular systems and FormMismatch if the
/// normalized pair is not in the family above.
NormalForm verify_normal_form(const DeRhamSystem& sys);

namespace detail {
/// Family check on already-normalized matrices (exact, or within 1e-9).
void check_normal_form(const MoebiusMatrix& a0n, const MoebiusMatrix& a1n, Mode mode);
}  // namespace detail

}  // namespace derham
