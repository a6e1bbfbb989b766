#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatq/polynomial.hpp"

namespace flatq {

using FpVector = std::vector<std::uint64_t>;

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p);
  static FpMatrix identity(std::size_t n, std::uint64_t p);
  static FpMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t p);
  static FpMatrix from_columns(const std::vector<FpVector>& columns, std::size_t n, std::uint64_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t prime() const { return p_; }
  bool square() const { return rows_ == cols_; }

  std::uint64_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  FpVector column(std::size_t j) const;
  FpVector row(std::size_t i) const;

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpVector operator*(const FpVector& v) const;
  FpMatrix operator-(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  FpMatrix minus_scalar(std::uint64_t lambda) const;
  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  /// Reduced row echelon form; pivot columns are appended to `pivots` if given.
  FpMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  /// Null-space basis from the RREF: one vector per free column, in column order.
  std::vector<FpVector> nullspace() const;
  /// Throws Singular.
  FpMatrix inverse() const;
  FpPoly char_poly() const;

  bool is_upper_triangular() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> data_;
};

/// Solves W * C = Y for C, where W has full column rank and every column of Y lies in its span.
FpMatrix solve_in_span(const FpMatrix& W, const FpMatrix& Y);

/// Rank of the column span of the given vectors.
std::size_t span_rank(const std::vector<FpVector>& vectors, std::size_t n, std::uint64_t p);

}  // namespace flatq
