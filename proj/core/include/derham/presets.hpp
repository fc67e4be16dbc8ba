#pragma once

#include "derham/system.hpp"

namespace derham::presets {

/// A_{p,0} = ((p, 0), (0, 1)), A_{p,1} = ((1-p, p), (0, 1)).
/// The solution is the distribution function of i.i.d. binary digits with
/// P(digit = 0) = p. Requires 0 < p < 1.
DeRhamSystem lebesgue(const Scalar& p);

/// x_u = 2/(1 + sqrt(1 + 8u^2)). Exact when u is exact and 1 + 8u^2 is the
/// square of a rational, approximate otherwise.
Scalar walk_x(const Scalar& u);

/// Self-interacting walk family:
///   A0 = ((x, 0), (-u^2 x^2, 1)),  A1 = ((0, x), (-u^2 x^2, 1 - u^2 x^2)),
/// admissible for 0 < u < sqrt(3).
DeRhamSystem walk(const Scalar& u);

}  // namespace derham::presets
