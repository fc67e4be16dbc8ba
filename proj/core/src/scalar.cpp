#include "derham/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <system_error>

#include "derham/errors.hpp"

namespace derham {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw DomainError("empty number in '" + std::string(whole) + "'");
  for (char ch : digits)
    if (ch < '0' || ch > '9')
      throw DomainError("malformed number '" + std::string(whole) + "'");
  // GMP reads a leading 0 as an octal prefix.
  const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  return Integer(std::string(digits.substr(first)));
}

Integer pow10(std::size_t exponent) {
  Integer result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::exact ? "exact" : "approx";
}

Scalar Scalar::ratio(long long num, long long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(Rational(Integer(num), Integer(den)));
}

Scalar Scalar::parse(std::string_view text, bool decimal_exact) {
  const std::string_view whole = text;
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty number");

  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(body.substr(0, slash), whole);
    Integer den = parse_integer(body.substr(slash + 1), whole);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(whole) + "'");
    Rational r(num, den);
    return Scalar(negative ? Rational(-r) : r);
  }

  const bool is_decimal = body.find_first_of(".eE") != std::string_view::npos;
  if (!is_decimal) {
    Integer n = parse_integer(body, whole);
    return Scalar(Rational(negative ? Integer(-n) : n));
  }

  if (!decimal_exact) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
      throw DomainError("malformed number '" + std::string(whole) + "'");
    return Scalar::approx(value);
  }

  // Exact decimal: mantissa digits with an optional base-10 exponent.
  std::string_view mantissa = body;
  long long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = body.substr(0, e);
    std::string_view exp_text = body.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto res = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (res.ec != std::errc() || res.ptr != exp_text.data() + exp_text.size())
      throw DomainError("malformed exponent in '" + std::string(whole) + "'");
  }
  std::string digits;
  std::size_t fraction_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    fraction_digits = mantissa.size() - dot - 1;
  } else {
    digits = std::string(mantissa);
  }
  Integer n = parse_integer(digits, whole);
  if (negative) n = -n;
  const long long shift = exponent - static_cast<long long>(fraction_digits);
  if (std::llabs(shift) > 4000) throw DomainError("exponent out of range in '" + std::string(whole) + "'");
  Rational r = shift >= 0 ? Rational(n * pow10(static_cast<std::size_t>(shift)))
                          : Rational(n, pow10(static_cast<std::size_t>(-shift)));
  return Scalar(r);
}

const Rational& Scalar::rational() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw PreconditionError("exact value requested from an approximate scalar");
}

double Scalar::to_double() const {
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  return std::get<Rational>(value_).convert_to<double>();
}

Scalar Scalar::to_mode(Mode mode) const {
  if (mode == Mode::approx) return Scalar::approx(to_double());
  if (is_exact()) return *this;
  const double d = std::get<double>(value_);
  if (!std::isfinite(d)) throw DomainError("non-finite value cannot be made exact");
  // Every finite double is a dyadic rational.
  int exponent = 0;
  const double mantissa = std::frexp(d, &exponent);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  Rational r(scaled);
  const int shift = exponent - 53;
  Integer two_pow = 1;
  two_pow <<= std::abs(shift);
  if (shift >= 0)
    r *= Rational(two_pow);
  else
    r /= Rational(two_pow);
  return Scalar(r);
}

std::string Scalar::to_string() const {
  if (const auto* d = std::get_if<double>(&value_)) return format_double(*d);
  return std::get<Rational>(value_).str();
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (const auto* d = std::get_if<double>(&value_)) return (*d > 0) - (*d < 0);
  return std::get<Rational>(value_).sign();
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact())
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  else
    value_ = to_double() + rhs.to_double();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact())
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  else
    value_ = to_double() - rhs.to_double();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact())
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  else
    value_ = to_double() * rhs.to_double();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  if (is_exact() && rhs.is_exact()) {
    const auto& r = std::get<Rational>(rhs.value_);
    if (r == 0) throw DomainError("exact division by zero");
    std::get<Rational>(value_) /= r;
  } else {
    value_ = to_double() / rhs.to_double();
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* d = std::get_if<double>(&value_)) return Scalar::approx(-*d);
  return Scalar(Rational(-std::get<Rational>(value_)));
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() && rhs.is_exact())
    return std::get<Rational>(lhs.value_) == std::get<Rational>(rhs.value_);
  return lhs.to_double() == rhs.to_double();
}

std::partial_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.is_exact() && rhs.is_exact()) {
    const auto& a = std::get<Rational>(lhs.value_);
    const auto& b = std::get<Rational>(rhs.value_);
    if (a < b) return std::partial_ordering::less;
    if (b < a) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return lhs.to_double() <=> rhs.to_double();
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar min(const Scalar& a, const Scalar& b) {
  Scalar out = b < a ? b : a;
  return out.to_mode(combine(a.mode(), b.mode()));
}

Scalar max(const Scalar& a, const Scalar& b) {
  Scalar out = a < b ? b : a;
  return out.to_mode(combine(a.mode(), b.mode()));
}

Scalar log(const Scalar& x) {
  if (x.sign() <= 0) throw DomainError("log of non-positive value " + x.to_string());
  if (x.is_exact()) {
    // Split numerator and denominator so huge rationals do not overflow a double.
    const auto& r = x.rational();
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    auto log_int = [](const Integer& n) {
      const std::size_t bits = boost::multiprecision::msb(n) + 1;
      if (bits <= 1000) return std::log(n.convert_to<double>());
      const std::size_t drop = bits - 64;
      Integer top = n >> drop;
      return std::log(top.convert_to<double>()) + static_cast<double>(drop) * std::log(2.0);
    };
    return Scalar::approx(log_int(num) - log_int(den));
  }
  return Scalar::approx(std::log(x.to_double()));
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

bool near(const Scalar& a, const Scalar& b, double tol) {
  if (tol == 0.0 && a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

}  // namespace derham
