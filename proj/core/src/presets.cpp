#include "derham/presets.hpp"

#include <cmath>

#include "derham/errors.hpp"

namespace derham::presets {

namespace {

// Exact square root of a non-negative integer, if it exists.
bool exact_isqrt(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

}  // namespace

DeRhamSystem lebesgue(const Scalar& p) {
  if (!(p > Scalar(0) && p < Scalar(1)))
    throw DomainError("lebesgue preset needs 0 < p < 1, got " + p.to_string());
  const Scalar zero = Scalar(0).to_mode(p.mode());
  const Scalar one = Scalar(1).to_mode(p.mode());
  return validate({p, zero, zero, one}, {one - p, p, zero, one});
}

Scalar walk_x(const Scalar& u) {
  const Scalar radicand = Scalar(1) + Scalar(8) * u * u;
  if (radicand.is_exact()) {
    Integer num_root, den_root;
    const auto& r = radicand.rational();
    if (exact_isqrt(boost::multiprecision::numerator(r), num_root) &&
        exact_isqrt(boost::multiprecision::denominator(r), den_root))
      return Scalar(2) / (Scalar(1) + Scalar(Rational(num_root, den_root)));
  }
  return Scalar::approx(2.0 / (1.0 + std::sqrt(radicand.to_double())));
}

DeRhamSystem walk(const Scalar& u) {
  if (!(u > Scalar(0)))
    throw DomainError("walk preset needs u > 0, got " + u.to_string());
  const Scalar x = walk_x(u);
  const Mode mode = x.mode();
  const Scalar uu = u.to_mode(mode);
  const Scalar c = -(uu * uu * x * x);
  const Scalar zero = Scalar(0).to_mode(mode);
  const Scalar one = Scalar(1).to_mode(mode);
  return validate({x, zero, c, one}, {zero, x, c, one + c});
}

}  // namespace derham::presets
