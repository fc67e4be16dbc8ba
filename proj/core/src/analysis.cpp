#include "derham/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "derham/errors.hpp"

namespace derham {

namespace {

const double kLog2 = std::log(2.0);

double s_of_p0(const DeRhamSystem& sys, const Scalar& y) {
  return entropy(p0(sys, y)).to_double();
}

bool identity_holds(const Scalar& lhs, const Scalar& rhs, const MoebiusMatrix& m) {
  if (lhs.is_exact() && rhs.is_exact()) return lhs == rhs;
  const double scale = std::max({std::abs(m.a.to_double()), std::abs(m.b.to_double()),
                                 std::abs(m.c.to_double()), std::abs(m.d.to_double())});
  return std::abs(lhs.to_double() - rhs.to_double()) <= kConditionRelTol * scale * scale;
}

const Scalar& shrink_factor() {
  static const Scalar factor(Rational((1 << 20) - 1, 1 << 20));
  return factor;
}

// |Phi(tA0; z) - m| > eps at both ends of [m - eps, m + eps], with the same
// sign; for an affine map this covers the whole interval.
bool separates(const DeRhamSystem& sys, const Scalar& m, const Scalar& eps) {
  const Scalar lo = phi(sys.transposed(0), m - eps) - m;
  const Scalar hi = phi(sys.transposed(0), m + eps) - m;
  return lo.sign() == hi.sign() && abs(lo) > eps && abs(hi) > eps;
}

}  // namespace

DimensionBounds dimension_bounds(const DeRhamSystem& sys) {
  const Scalar peak = sys.gamma() - Scalar(2);
  const double s_alpha = s_of_p0(sys, sys.alpha());
  const double s_beta = s_of_p0(sys, sys.beta());

  DimensionBounds out;
  if (sys.alpha() <= peak && peak <= sys.beta()) {
    out.theta1 = kLog2;
    out.argmax_location = peak;
  } else if (peak < sys.alpha()) {
    out.theta1 = s_alpha;
    out.argmax_location = sys.alpha();
  } else {
    out.theta1 = s_beta;
    out.argmax_location = sys.beta();
  }
  out.theta2 = std::min(s_alpha, s_beta);
  out.dim_upper = out.theta1 / kLog2;
  out.dim_lower = out.theta2 / kLog2;
  return out;
}

bool condition_i(const DeRhamSystem& sys) {
  const auto& m = sys.a0();
  const Scalar lhs = (m.c + m.d - Scalar(2) * m.a) * (m.d - m.a);
  const Scalar rhs = m.a * m.c;
  return identity_holds(lhs, rhs, m);
}

bool condition_ii(const DeRhamSystem& sys) {
  const auto& m = sys.a1();
  const Scalar lhs = (m.a - Scalar(2) * m.c) * (m.d - Scalar(2) * m.b);
  const Scalar rhs = m.b * m.c;
  return identity_holds(lhs, rhs, m);
}

ClassificationReport classify(const DeRhamSystem& sys) {
  ClassificationReport report;
  report.condition_i = condition_i(sys);
  report.condition_ii = condition_ii(sys);
  report.exactness = sys.mode();
  if (report.condition_i && report.condition_ii) {
    report.verdict = AbsolutelyContinuous{sys.a0().c / sys.a0().d};
    return report;
  }
  Singular singular{dimension_bounds(sys), std::nullopt};
  if (!report.condition_i) {
    try {
      singular.defect_bound = singular_dim_upper_bound(sys);
    } catch (const ConditionHoldsError&) {
      // (i) failed only within tolerance; no certified radius exists.
    }
  }
  report.verdict = singular;
  return report;
}

Scalar epsilon0(const DeRhamSystem& sys) {
  if (condition_i(sys)) throw ConditionHoldsError("condition (i) holds; eps0 is undefined");
  const Scalar peak = sys.gamma() - Scalar(2);
  const Scalar delta = abs(phi(sys.transposed(0), peak) - peak);
  if (delta.is_zero()) throw ConditionHoldsError("Phi(tA0; gamma-2) = gamma-2");

  const Scalar slope = sys.a0().a / sys.a0().d;
  const Scalar cap = shrink_factor() * Scalar(2) * (sys.gamma() - Scalar(1));
  const Scalar eps = shrink_factor() * min(delta / (Scalar(1) + slope), cap);
  if (!separates(sys, peak, eps))
    throw std::logic_error("eps0 = " + eps.to_string() + " failed post-verification");
  return eps;
}

double singular_dim_upper_bound(const DeRhamSystem& sys) {
  return singular_dim_upper_bound(sys, epsilon0(sys));
}

double singular_dim_upper_bound(const DeRhamSystem& sys, const Scalar& eps0) {
  if (condition_i(sys)) throw ConditionHoldsError("condition (i) holds; no defect bound");
  const Scalar peak = sys.gamma() - Scalar(2);
  if (!(eps0 > Scalar(0)) || !(eps0 < Scalar(2) * (sys.gamma() - Scalar(1))))
    throw PreconditionError("eps0 = " + eps0.to_string() + " outside (0, 2(gamma-1))");
  if (!(peak - eps0 > -sys.gamma()))
    throw DomainError("gamma - 2 - eps0 <= -gamma");
  if (!separates(sys, peak, eps0))
    throw PreconditionError("eps0 = " + eps0.to_string() + " does not separate gamma-2");

  const double e0 = std::max(s_of_p0(sys, peak + eps0), s_of_p0(sys, peak - eps0));
  const double p_alpha = p0(sys, sys.alpha()).to_double();
  return (kLog2 - (kLog2 - e0) * p_alpha / 2.0) / kLog2;
}

namespace detail {

void check_normal_form(const MoebiusMatrix& a0n, const MoebiusMatrix& a1n, Mode mode) {
  const Scalar& c0 = a0n.c;
  const MoebiusMatrix want0{Scalar::ratio(1, 2), Scalar(0), c0, Scalar(1)};
  const MoebiusMatrix want1{Scalar(4) * c0 + Scalar(1), Scalar(1), Scalar(2) * c0,
                            Scalar(2) * (Scalar(1) + c0)};
  auto same = [mode](const MoebiusMatrix& x, const MoebiusMatrix& y) {
    const double tol = mode == Mode::exact ? 0.0 : 1e-9;
    return near(x.a, y.a, tol) && near(x.b, y.b, tol) && near(x.c, y.c, tol) &&
           near(x.d, y.d, tol);
  };
  if (!same(a0n, want0))
    throw FormMismatch("A0/d0 = " + a0n.to_string() + ", expected " + want0.to_string());
  if (!same(a1n, want1))
    throw FormMismatch("A1/b1 = " + a1n.to_string() + ", expected " + want1.to_string());
}

}  // namespace detail

NormalForm verify_normal_form(const DeRhamSystem& sys) {
  if (!classify(sys).absolutely_continuous())
    throw PreconditionError("normal form requires an absolutely continuous system");
  const MoebiusMatrix a0n = sys.a0().scaled(Scalar(1) / sys.a0().d);
  const MoebiusMatrix a1n = sys.a1().scaled(Scalar(1) / sys.a1().b);
  detail::check_normal_form(a0n, a1n, sys.mode());
  return {a0n, a1n, a0n.c};
}

}  // namespace derham
