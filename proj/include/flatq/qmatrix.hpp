#pragma once

#include <string>
#include <vector>

#include "flatq/fp_matrix.hpp"
#include "flatq/polynomial.hpp"
#include "flatq/rational.hpp"

namespace flatq {

using QVector = std::vector<Rational>;

/// Square matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n) : n_(n), a_(n * n) {}
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t dim() const { return n_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<Rational>& entries() const { return a_; }

  QMatrix operator*(const QMatrix& rhs) const;
  QVector operator*(const QVector& v) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

  bool is_zero() const;
  Rational determinant() const;
  /// Gauss-Jordan inverse; throws Singular.
  QMatrix inverse() const;
  QMatrix pow(unsigned long k) const;

  /// Entry-wise reduction; throws BadPrime when p divides a denominator.
  FpMatrix reduce_mod(std::uint64_t p) const;

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

/// det(xI - M) by a division-free method.
MonicPoly char_poly(const QMatrix& M);

/// A basis of the span of the given vectors (row-reduced), empty for the zero space.
std::vector<QVector> span_basis(const std::vector<QVector>& vectors);

}  // namespace flatq
