#pragma once

#include <string>

#include "derham/scalar.hpp"

namespace derham {

/// A 2x2 real matrix ((a, b), (c, d)) acting on the line by
/// z -> (az + b) / (cz + d).
struct MoebiusMatrix {
  Scalar a{1}, b{0}, c{0}, d{1};

  static MoebiusMatrix identity() { return {}; }

  Mode mode() const;
  Scalar det() const { return a * d - b * c; }
  MoebiusMatrix to_mode(Mode mode) const;
  MoebiusMatrix scaled(const Scalar& k) const { return {a * k, b * k, c * k, d * k}; }
  std::string to_string() const;

  friend bool operator==(const MoebiusMatrix&, const MoebiusMatrix&) = default;
};

/// Phi(A; z) = (az + b) / (cz + d). Throws PoleError when the denominator
/// vanishes (exactly, or below 1e-15 * max(|c|, |d|, 1) in approximate mode).
Scalar phi(const MoebiusMatrix& m, const Scalar& z);

MoebiusMatrix mat_mul(const MoebiusMatrix& lhs, const MoebiusMatrix& rhs);
inline MoebiusMatrix operator*(const MoebiusMatrix& lhs, const MoebiusMatrix& rhs) {
  return mat_mul(lhs, rhs);
}

/// Positive rescaling that leaves Phi unchanged. Approximate matrices get
/// max |entry| = 1; exact matrices become the coprime integer quadruple.
/// Throws ZeroMatrixError for the zero matrix.
MoebiusMatrix renormalize(const MoebiusMatrix& m);

MoebiusMatrix transpose(const MoebiusMatrix& m);

/// d/dz Phi(A; z) = det A / (cz + d)^2. Throws PoleError like phi.
Scalar phi_derivative(const MoebiusMatrix& m, const Scalar& z);

/// Running product A_{i1} A_{i2} ... built left to right. In approximate mode
/// the product is rescaled every `kRenormalizeEvery` factors; the accumulated
/// log of the scale is kept so the true product is exp(-log_scale()) * matrix().
/// Exact products are kept as reduced rationals and never rescaled.
class MatrixWord {
 public:
  static constexpr int kRenormalizeEvery = 16;

  explicit MatrixWord(Mode mode)
      : mode_(mode), matrix_(MoebiusMatrix::identity().to_mode(mode)) {}

  void append(const MoebiusMatrix& factor);

  const MoebiusMatrix& matrix() const noexcept { return matrix_; }
  double log_scale() const noexcept { return log_scale_; }
  std::size_t length() const noexcept { return length_; }
  Mode mode() const noexcept { return mode_; }

 private:
  Mode mode_;
  MoebiusMatrix matrix_;
  double log_scale_ = 0.0;
  std::size_t length_ = 0;
  int since_renormalize_ = 0;
};

}  // namespace derham
