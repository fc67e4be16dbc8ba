#include "derham/solution.hpp"

#include <cmath>
#include <limits>

#include "derham/analysis.hpp"
#include "derham/errors.hpp"

namespace derham {

namespace {

bool is_dyadic(const Rational& r) {
  const Integer den = boost::multiprecision::denominator(r);
  return (den & (den - 1)) == 0;
}

void check_unit_interval(const Scalar& x, const char* what) {
  if (x < Scalar(0) || x > Scalar(1))
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + x.to_string());
}

}  // namespace

MoebiusMatrix word(const DeRhamSystem& sys, const DyadicAddress& addr) {
  MatrixWord w(sys.mode());
  for (std::size_t i = 0; i < addr.size(); ++i) w.append(sys.matrix(addr[i]));
  return w.matrix();
}

ValueEnclosure eval_dyadic(const DeRhamSystem& sys, const DyadicAddress& addr) {
  const MoebiusMatrix w = word(sys, addr);
  return {phi(w, Scalar(0)), phi(w, Scalar(1))};
}

ValueEnclosure eval_enclosure(const DeRhamSystem& sys, const Scalar& x, double tol,
                              unsigned depth_cap) {
  check_unit_interval(x, "x");
  const Mode mode = combine(sys.mode(), x.mode());
  if (x == Scalar(1)) return {Scalar(1).to_mode(mode), Scalar(1).to_mode(mode)};

  MatrixWord w(mode);
  Scalar rest = x;
  const Scalar one(1), two(2);
  for (unsigned depth = 0;; ++depth) {
    if (rest.is_zero()) {
      const Scalar v = phi(w.matrix(), Scalar(0));
      return {v, v};
    }
    ValueEnclosure enc{phi(w.matrix(), Scalar(0)), phi(w.matrix(), one)};
    if (enc.width().to_double() <= 2.0 * tol) return enc;
    if (depth == depth_cap)
      throw NonConvergence("enclosure of f(" + x.to_string() + ") still wider than 2*tol at depth " +
                           std::to_string(depth_cap));
    rest *= two;
    int digit = 0;
    if (rest >= one) {
      digit = 1;
      rest -= one;
    }
    w.append(sys.matrix(digit));
  }
}

Scalar eval(const DeRhamSystem& sys, const Scalar& x, double tol, unsigned depth_cap) {
  const ValueEnclosure enc = eval_enclosure(sys, x, tol, depth_cap);
  return enc.lower == enc.upper ? enc.lower : enc.midpoint();
}

Scalar functional_equation_residual(const DeRhamSystem& sys, const Scalar& x) {
  check_unit_interval(x, "x");
  if (x.is_exact() && !is_dyadic(x.rational()))
    throw PreconditionError("residual needs a dyadic x, got " + x.to_string());

  const Scalar half = Scalar::ratio(1, 2);
  const Scalar fx = eval(sys, x, 0.0);
  Scalar residual = Scalar(0).to_mode(fx.mode());
  if (x <= half) {
    const Scalar rhs = phi(sys.a0(), eval(sys, Scalar(2) * x, 0.0));
    residual = max(residual, abs(fx - rhs));
  }
  if (x >= half) {
    const Scalar rhs = phi(sys.a1(), eval(sys, Scalar(2) * x - Scalar(1), 0.0));
    residual = max(residual, abs(fx - rhs));
  }
  return residual;
}

Scalar inverse_eval(const DeRhamSystem& sys, const Scalar& y, double tol, unsigned depth_cap) {
  check_unit_interval(y, "y");
  const Mode mode = combine(sys.mode(), y.mode());
  if (y.is_zero()) return Scalar(0).to_mode(mode);
  if (y == Scalar(1)) return Scalar(1).to_mode(mode);

  // f(left + 2^-(n+1)) = Phi(W A1; 0) = Phi(W; b1/d1).
  const Scalar split_point = sys.a1().b / sys.a1().d;
  MatrixWord w(mode);
  Rational left = 0;
  Rational width = 1;
  Scalar lo = Scalar(0).to_mode(mode), hi = Scalar(1).to_mode(mode);
  for (unsigned depth = 0;; ++depth) {
    if (y == lo) return Scalar(left).to_mode(mode);
    if (y == hi) return Scalar(Rational(left + width)).to_mode(mode);
    if (width.convert_to<double>() <= 2.0 * tol) return Scalar(Rational(left + width / 2)).to_mode(mode);
    if (depth == depth_cap)
      throw NonConvergence("g(" + y.to_string() + ") not resolved to tol by depth " +
                           std::to_string(depth_cap));
    const Scalar mid = phi(w.matrix(), split_point);
    width /= 2;
    // Node values reached along different products differ by a few ulps, and
    // f can be flat enough that such a difference moves g(y) a long way.
    if (mode == Mode::approx && std::abs(y.to_double() - mid.to_double()) <=
                                    8 * std::numeric_limits<double>::epsilon() * mid.to_double())
      return Scalar(Rational(left + width)).to_mode(mode);
    if (y < mid) {
      w.append(sys.a0());
      hi = mid;
    } else {
      w.append(sys.a1());
      left += width;
      lo = mid;
    }
  }
}

Scalar ClosedForm::value(const Scalar& x) const {
  const Scalar two_c0 = Scalar(2) * c0;
  return x / (-two_c0 * x + Scalar(1) + two_c0);
}

Scalar ClosedForm::density(const Scalar& x) const {
  const Scalar two_c0 = Scalar(2) * c0;
  const Scalar den = -two_c0 * x + Scalar(1) + two_c0;
  return (Scalar(1) + two_c0) / (den * den);
}

Scalar ClosedForm::inverse(const Scalar& y) const {
  const Scalar two_c0 = Scalar(2) * c0;
  return (two_c0 + Scalar(1)) * y / (two_c0 * y + Scalar(1));
}

std::optional<ClosedForm> closed_form_solution(const DeRhamSystem& sys) {
  const ClassificationReport report = classify(sys);
  if (!report.absolutely_continuous()) return std::nullopt;
  const NormalForm normal = verify_normal_form(sys);
  return ClosedForm{normal.c0};
}

}  // namespace derham
