#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <boost/multiprecision/gmp.hpp>

namespace derham {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Arithmetic mode of a scalar or of a whole system.
enum class Mode { exact, approx };

inline Mode combine(Mode a, Mode b) {
  return (a == Mode::exact && b == Mode::exact) ? Mode::exact : Mode::approx;
}

std::string_view to_string(Mode mode);

/// A real number that is either an exact rational (always in lowest terms,
/// positive denominator) or a double. Operations between two exact values
/// stay exact; anything touching an approximate value becomes approximate.
/// Conversion from double is explicit so exactness is never lost silently.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(long long value) : value_(Rational(value)) {}  // NOLINT: integers are exact
  Scalar(int value) : value_(Rational(value)) {}        // NOLINT
  explicit Scalar(Rational value) : value_(std::move(value)) {}

  static Scalar ratio(long long num, long long den);
  static Scalar approx(double value) { return Scalar(ApproxTag{}, value); }

  /// Parses "n", "n/d", or a decimal literal. Integer and fraction
  /// syntax yield exact values; decimals yield approximate values unless
  /// `decimal_exact` is set, in which case the decimal is read exactly
  /// (0.25 -> 1/4).
  static Scalar parse(std::string_view text, bool decimal_exact = false);

  Mode mode() const noexcept {
    return std::holds_alternative<Rational>(value_) ? Mode::exact : Mode::approx;
  }
  bool is_exact() const noexcept { return mode() == Mode::exact; }

  /// Throws PreconditionError for approximate values.
  const Rational& rational() const;
  double to_double() const;
  Scalar to_mode(Mode mode) const;

  /// "p/q" (or "p") in exact mode, shortest round-trip decimal otherwise.
  std::string to_string() const;

  bool is_zero() const;
  int sign() const;

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  /// Exact division by zero throws DomainError; approximate follows IEEE.
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;

  /// Exact comparison when both sides are exact, double comparison otherwise.
  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  struct ApproxTag {};
  Scalar(ApproxTag, double value) : value_(value) {}

  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);
Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);
/// Natural logarithm; always approximate.
Scalar log(const Scalar& x);

std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// |a - b| <= tol. Exact comparison when tol is exact zero and both are exact.
bool near(const Scalar& a, const Scalar& b, double tol);

}  // namespace derham
