#pragma once

#include <optional>

#include "derham/address.hpp"
#include "derham/system.hpp"

namespace derham {

/// [f(left), f(right)] for a dyadic interval: f maps the interval onto it.
struct ValueEnclosure {
  Scalar lower;
  Scalar upper;

  Scalar width() const { return upper - lower; }
  Scalar midpoint() const { return (lower + upper) / Scalar(2); }
};

inline constexpr unsigned kDefaultDepthCap = 4096;

/// Product A_{i1} ... A_{in} for the address (rescaled in approximate mode).
MoebiusMatrix word(const DeRhamSystem& sys, const DyadicAddress& addr);

/// Enclosure [Phi(word; 0), Phi(word; 1)] of f over the address' interval.
ValueEnclosure eval_dyadic(const DeRhamSystem& sys, const DyadicAddress& addr);

/// Enclosure of f(x) obtained by following the binary digits of x until the
/// width is at most 2*tol. Terminates with a degenerate enclosure as soon as
/// the remaining digits of x are all zero. Throws NonConvergence past `depth_cap`.
ValueEnclosure eval_enclosure(const DeRhamSystem& sys, const Scalar& x, double tol,
                              unsigned depth_cap = kDefaultDepthCap);

/// f(x) within tol (midpoint of the enclosure); exact at dyadic x in exact
/// mode, and f(1) = 1.
Scalar eval(const DeRhamSystem& sys, const Scalar& x, double tol,
            unsigned depth_cap = kDefaultDepthCap);

/// Residual of the functional equation at a dyadic x:
///   |f(x) - Phi(A0; f(2x))|   for x <= 1/2,
///   |f(x) - Phi(A1; f(2x-1))| for x >= 1/2  (both at x = 1/2, max returned).
/// Throws PreconditionError for exact non-dyadic x.
Scalar functional_equation_residual(const DeRhamSystem& sys, const Scalar& x);

/// g(y) = f^{-1}(y) within tol, found by descending the dyadic tree.
/// Returns the exact dyadic preimage when y is a node endpoint.
Scalar inverse_eval(const DeRhamSystem& sys, const Scalar& y, double tol,
                    unsigned depth_cap = kDefaultDepthCap);

/// f(x) = x / (-2 c0 x + 1 + 2 c0) in the absolutely continuous case.
struct ClosedForm {
  Scalar c0;  // c0 after normalizing d0 = 1

  Scalar value(const Scalar& x) const;
  Scalar density(const Scalar& x) const;
  /// g(y) = (2 c0 + 1) y / (2 c0 y + 1)
  Scalar inverse(const Scalar& y) const;
};

/// Closed form when the system is absolutely continuous, nullopt otherwise.
/// Throws FormMismatch if the normalized matrices leave the expected family.
std::optional<ClosedForm> closed_form_solution(const DeRhamSystem& sys);

}  // namespace derham
