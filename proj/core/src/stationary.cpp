#include "derham/stationary.hpp"

#include <vector>

#include "derham/analysis.hpp"
#include "derham/errors.hpp"
#include "derham/measure.hpp"
#include "derham/solution.hpp"

namespace derham {

Scalar mu_g_interval(const DeRhamSystem& sys, const Scalar& a, const Scalar& b, double tol) {
  if (a < Scalar(0) || b > Scalar(1) || b < a)
    throw DomainError("mu_g_interval needs 0 <= a <= b <= 1");
  return inverse_eval(sys, b, tol / 2) - inverse_eval(sys, a, tol / 2);
}

StationarityReport stationarity_check(const DeRhamSystem& sys, unsigned depth, double tol) {
  if (depth < 1 || depth > 20) throw PreconditionError("stationarity depth must be in [1, 20]");
  const Mode mode = sys.mode();
  const std::uint64_t cells = std::uint64_t{1} << depth;

  // f on the finest grid j / 2^depth, then g at those values.
  std::vector<Scalar> f_grid(cells + 1);
  for (std::uint64_t j = 0; j < cells; ++j)
    f_grid[j] = eval_dyadic(sys, DyadicAddress::from_index(j, depth)).lower;
  f_grid[cells] = Scalar(1).to_mode(mode);
  std::vector<Scalar> g_grid(cells + 1);
  for (std::uint64_t j = 0; j <= cells; ++j) g_grid[j] = inverse_eval(sys, f_grid[j], tol / 2);

  // nu(f(I)) for the k-th interval of depth `level`.
  auto nu = [&](std::uint64_t k, unsigned level) {
    const unsigned shift = depth - level;
    return g_grid[(k + 1) << shift] - g_grid[k << shift];
  };

  StationarityReport report;
  report.depth = depth;
  report.max_residual_recursion = Scalar(0).to_mode(mode);
  report.max_residual_mass = Scalar(0).to_mode(mode);
  for (unsigned level = 1; level <= depth; ++level) {
    const Scalar mass = Scalar(Rational(Integer(1), Integer(Integer(1) << level)));
    const std::uint64_t count = std::uint64_t{1} << level;
    for (std::uint64_t k = 0; k < count; ++k) {
      const Scalar here = nu(k, level);
      // Dropping the leading digit: the interval I_{k-1}(Tx).
      const std::uint64_t shifted = k & ((count >> 1) - 1);
      const Scalar parent = nu(shifted, level - 1) / Scalar(2);
      report.max_residual_recursion = max(report.max_residual_recursion, abs(here - parent));
      report.max_residual_mass = max(report.max_residual_mass, abs(here - mass));
    }
  }

  const ClassificationReport verdict = classify(sys);
  const bool mu_f_singular = !verdict.absolutely_continuous();
  const bool nu_singular = !(verdict.condition_i && verdict.condition_ii);
  report.verdict_transfer = mu_f_singular == nu_singular;
  if (report.verdict_transfer && !nu_singular) {
    const ClosedForm cf{std::get<AbsolutelyContinuous>(verdict.verdict).c0norm};
    const double slack = mode == Mode::exact ? 0.0 : 4.0 * tol;
    for (std::uint64_t j = 0; j <= cells; ++j)
      if (!near(g_grid[j], cf.inverse(f_grid[j]), slack)) report.verdict_transfer = false;
  }
  return report;
}

Scalar shift_change_of_measure_check(const DeRhamSystem& sys, unsigned depth,
                                     unsigned quad_depth) {
  if (quad_depth <= depth || quad_depth > 24)
    throw PreconditionError("need depth < quad_depth <= 24");
  const Mode mode = sys.mode();
  const std::uint64_t intervals = std::uint64_t{1} << depth;
  const unsigned fine_shift = quad_depth - depth;
  const Scalar split_point = sys.a1().b / sys.a1().d;  // f(1/2)

  std::vector<Scalar> integral(intervals, Scalar(0).to_mode(mode));
  visit_tree(sys, quad_depth, [&](const MeasureNode& node) {
    if (node.addr.size() != quad_depth) return;
    const Scalar f_mid = phi(node.word, split_point);
    const Scalar density = phi_derivative(sys.a0(), f_mid) + phi_derivative(sys.a1(), f_mid);
    integral[node.addr.index() >> fine_shift] += density * node.R;
  });

  Scalar worst = Scalar(0).to_mode(mode);
  for (std::uint64_t k = 0; k < intervals; ++k) {
    const DyadicAddress a = DyadicAddress::from_index(k, depth);
    const Scalar preimage =
        interval_measure(sys, a.prefixed(0)) + interval_measure(sys, a.prefixed(1));
    worst = max(worst, abs(preimage - integral[k]));
  }
  return worst;
}

}  // namespace derham
