#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "derham/scalar.hpp"

namespace derham {

/// Binary digits (i1, ..., in) naming the half-open dyadic interval
/// [sum i_j 2^-j, sum i_j 2^-j + 2^-n). The empty address is [0, 1).
class DyadicAddress {
 public:
  DyadicAddress() = default;
  DyadicAddress(std::initializer_list<int> bits);
  explicit DyadicAddress(std::vector<std::uint8_t> bits);

  /// The k-th interval of depth n, k in [0, 2^n). Requires n <= 63.
  static DyadicAddress from_index(std::uint64_t k, unsigned depth);

  /// First `depth` digits X_1(x), ..., X_n(x) of x in [0, 1), using
  /// X_n(x) = [2^n x] - 2[2^{n-1} x] (terminating expansion for dyadics).
  static DyadicAddress of_point(const Scalar& x, unsigned depth);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  DyadicAddress child(int digit) const;
  /// Drops the first digit (the address of I_{n-1}(Tx) for the doubling map T).
  DyadicAddress shifted() const;
  /// Prepends a digit (one of the two preimages under the doubling map).
  DyadicAddress prefixed(int digit) const;

  /// Index k with left endpoint k / 2^n. Requires size() <= 63.
  std::uint64_t index() const;
  Scalar left() const;   // exact
  Scalar right() const;  // exact
  std::string to_string() const;

  friend bool operator==(const DyadicAddress&, const DyadicAddress&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace derham
