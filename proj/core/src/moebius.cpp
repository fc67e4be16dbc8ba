#include "derham/moebius.hpp"

#include <cmath>

#include "derham/errors.hpp"

namespace derham {

namespace {

constexpr double kPoleTolerance = 1e-15;

Scalar checked_denominator(const MoebiusMatrix& m, const Scalar& z) {
  Scalar den = m.c * z + m.d;
  if (den.is_exact()) {
    if (den.is_zero()) throw PoleError("pole at z = " + z.to_string() + " for " + m.to_string());
  } else {
    const double scale = std::max({std::abs(m.c.to_double()), std::abs(m.d.to_double()), 1.0});
    if (!(std::abs(den.to_double()) > kPoleTolerance * scale))
      throw PoleError("denominator " + den.to_string() + " at z = " + z.to_string() + " for " +
                      m.to_string());
  }
  return den;
}

}  // namespace

Mode MoebiusMatrix::mode() const {
  return combine(combine(a.mode(), b.mode()), combine(c.mode(), d.mode()));
}

MoebiusMatrix MoebiusMatrix::to_mode(Mode mode) const {
  return {a.to_mode(mode), b.to_mode(mode), c.to_mode(mode), d.to_mode(mode)};
}

std::string MoebiusMatrix::to_string() const {
  return "((" + a.to_string() + ", " + b.to_string() + "), (" + c.to_string() + ", " +
         d.to_string() + "))";
}

Scalar phi(const MoebiusMatrix& m, const Scalar& z) {
  Scalar den = checked_denominator(m, z);
  return (m.a * z + m.b) / den;
}

MoebiusMatrix mat_mul(const MoebiusMatrix& lhs, const MoebiusMatrix& rhs) {
  return {lhs.a * rhs.a + lhs.b * rhs.c, lhs.a * rhs.b + lhs.b * rhs.d,
          lhs.c * rhs.a + lhs.d * rhs.c, lhs.c * rhs.b + lhs.d * rhs.d};
}

MoebiusMatrix renormalize(const MoebiusMatrix& m) {
  if (m.a.is_zero() && m.b.is_zero() && m.c.is_zero() && m.d.is_zero())
    throw ZeroMatrixError("cannot renormalize the zero matrix");

  if (m.mode() == Mode::approx) {
    const double scale = std::max({std::abs(m.a.to_double()), std::abs(m.b.to_double()),
                                   std::abs(m.c.to_double()), std::abs(m.d.to_double())});
    return m.to_mode(Mode::approx).scaled(Scalar::approx(1.0 / scale));
  }

  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const Rational* entries[] = {&m.a.rational(), &m.b.rational(), &m.c.rational(),
                               &m.d.rational()};
  Integer lcm_den = 1;
  for (const auto* e : entries) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(*e));
  Integer gcd_num = 0;
  for (const auto* e : entries)
    gcd_num = boost::multiprecision::gcd(gcd_num, Integer(numerator(*e) * (lcm_den / denominator(*e))));
  return m.scaled(Scalar(Rational(lcm_den, gcd_num)));
}

MoebiusMatrix transpose(const MoebiusMatrix& m) { return {m.a, m.c, m.b, m.d}; }

Scalar phi_derivative(const MoebiusMatrix& m, const Scalar& z) {
  Scalar den = checked_denominator(m, z);
  return m.det() / (den * den);
}

void MatrixWord::append(const MoebiusMatrix& factor) {
  matrix_ = mat_mul(matrix_, factor);
  ++length_;
  if (mode_ == Mode::approx && ++since_renormalize_ == kRenormalizeEvery) {
    since_renormalize_ = 0;
    const double scale =
        std::max({std::abs(matrix_.a.to_double()), std::abs(matrix_.b.to_double()),
                  std::abs(matrix_.c.to_double()), std::abs(matrix_.d.to_double())});
    matrix_ = renormalize(matrix_);
    log_scale_ -= std::log(scale);
  }
}

}  // namespace derham
