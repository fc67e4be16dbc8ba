#pragma once

#include "derham/system.hpp"

namespace derham {

/// nu = mu_g, the distribution with CDF g = f^{-1}, checked against the
/// stationarity recursion for the random action drawing A0 or A1 with
/// probability 1/2 each.
struct StationarityReport {
  unsigned depth = 0;
  /// max |nu(f(I_k)) - nu(f(I_{k-1}(Tx)))/2| over all addresses, k <= depth
  Scalar max_residual_recursion;
  /// max |nu(f(I_k)) - 2^-k|
  Scalar max_residual_mass;
  /// mu_f and nu classified alike; in the absolutely continuous case g also
  /// matches (2c0 + 1) y / (2c0 y + 1) on the grid.
  bool verdict_transfer = false;
};

/// mu_g([a, b]) = g(b) - g(a), each endpoint resolved to tol/2.
Scalar mu_g_interval(const DeRhamSystem& sys, const Scalar& a, const Scalar& b, double tol);

/// Requires 1 <= depth <= 20. Exact systems give exact residuals.
StationarityReport stationarity_check(const DeRhamSystem& sys, unsigned depth, double tol);

/// Change of measure under the doubling map T x = 2x mod 1:
///   mu_f(T^-1 A) = int_A (Phi'(A0; f(y)) + Phi'(A1; f(y))) mu_f(dy),
/// tested on every dyadic A of the given depth. The integral is a sum over
/// cells of depth `quad_depth` inside A, with the integrand at the cell
/// midpoint weighted by the exact cell mass. Returns the largest residual.
/// Requires depth < quad_depth <= 24.
Scalar shift_change_of_measure_check(const DeRhamSystem& sys, unsigned depth,
                                     unsigned quad_depth);

}  // namespace derham
