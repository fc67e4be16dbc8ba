#include "derham/address.hpp"

#include "derham/errors.hpp"

namespace derham {

DyadicAddress::DyadicAddress(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw DomainError("address digits must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

DyadicAddress::DyadicAddress(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw DomainError("address digits must be 0 or 1");
}

DyadicAddress DyadicAddress::from_index(std::uint64_t k, unsigned depth) {
  if (depth > 63) throw DomainError("from_index supports depth <= 63");
  if (k >> depth) throw DomainError("index out of range for depth");
  std::vector<std::uint8_t> bits(depth);
  for (unsigned j = 0; j < depth; ++j) bits[j] = (k >> (depth - 1 - j)) & 1u;
  return DyadicAddress(std::move(bits));
}

DyadicAddress DyadicAddress::of_point(const Scalar& x, unsigned depth) {
  if (x < Scalar(0) || !(x < Scalar(1)))
    throw DomainError("of_point needs x in [0, 1), got " + x.to_string());
  std::vector<std::uint8_t> bits(depth);
  if (x.is_exact()) {
    Rational r = x.rational();
    for (unsigned j = 0; j < depth; ++j) {
      r *= 2;
      if (r >= 1) {
        bits[j] = 1;
        r -= 1;
      }
    }
  } else {
    // Doubling and subtracting 1 are exact in binary floating point.
    double r = x.to_double();
    for (unsigned j = 0; j < depth; ++j) {
      r *= 2.0;
      if (r >= 1.0) {
        bits[j] = 1;
        r -= 1.0;
      }
    }
  }
  return DyadicAddress(std::move(bits));
}

DyadicAddress DyadicAddress::child(int digit) const {
  DyadicAddress out = *this;
  out.bits_.push_back(static_cast<std::uint8_t>(digit != 0));
  return out;
}

DyadicAddress DyadicAddress::shifted() const {
  if (bits_.empty()) throw PreconditionError("cannot shift the empty address");
  return DyadicAddress(std::vector<std::uint8_t>(bits_.begin() + 1, bits_.end()));
}

DyadicAddress DyadicAddress::prefixed(int digit) const {
  std::vector<std::uint8_t> bits;
  bits.reserve(bits_.size() + 1);
  bits.push_back(static_cast<std::uint8_t>(digit != 0));
  bits.insert(bits.end(), bits_.begin(), bits_.end());
  return DyadicAddress(std::move(bits));
}

std::uint64_t DyadicAddress::index() const {
  if (bits_.size() > 63) throw DomainError("index() supports depth <= 63");
  std::uint64_t k = 0;
  for (auto b : bits_) k = (k << 1) | b;
  return k;
}

Scalar DyadicAddress::left() const {
  Integer k = 0;
  for (auto b : bits_) k = (k << 1) | Integer(b);
  Integer den = 1;
  den <<= bits_.size();
  return Scalar(Rational(k, den));
}

Scalar DyadicAddress::right() const {
  Integer den = 1;
  den <<= bits_.size();
  return left() + Scalar(Rational(Integer(1), den));
}

std::string DyadicAddress::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace derham
