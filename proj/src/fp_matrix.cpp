#include "flatq/fp_matrix.hpp"

#include <sstream>

#include "flatq/detail/berkowitz.hpp"
#include "flatq/error.hpp"

namespace flatq {

namespace {

struct FpRing {
  std::uint64_t p;
  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return 1 % p; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return add_mod(a, b, p); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return sub_mod(a, b, p); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mul_mod(a, b, p); }
  std::uint64_t neg(std::uint64_t a) const { return sub_mod(0, a, p); }
};

void require_same_shape(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.prime() != b.prime()) {
    throw Error(Errc::DimensionMismatch, "F_p matrix shapes differ");
  }
}

}  // namespace

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, std::uint64_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows, std::uint64_t p) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  FpMatrix m(r, c, p);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j] % p;
  }
  return m;
}

FpMatrix FpMatrix::from_columns(const std::vector<FpVector>& columns, std::size_t n, std::uint64_t p) {
  FpMatrix m(n, columns.size(), p);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) throw Error(Errc::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = columns[j][i] % p;
  }
  return m;
}

FpVector FpMatrix::column(std::size_t j) const {
  FpVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

FpVector FpMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw Error(Errc::DimensionMismatch, "F_p matrix product");
  FpMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out.at(i, j) = add_mod(out.at(i, j), mul_mod(a, rhs.at(k, j), p_), p_);
      }
    }
  }
  return out;
}

FpVector FpMatrix::operator*(const FpVector& v) const {
  if (v.size() != cols_) throw Error(Errc::DimensionMismatch, "F_p matrix-vector product");
  FpVector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) out[i] = add_mod(out[i], mul_mod(at(i, k), v[k], p_), p_);
  }
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
  require_same_shape(*this, rhs);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = sub_mod(data_[i], rhs.data_[i], p_);
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  require_same_shape(*this, rhs);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = add_mod(data_[i], rhs.data_[i], p_);
  return out;
}

FpMatrix FpMatrix::minus_scalar(std::uint64_t lambda) const {
  FpMatrix out = *this;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) out.at(i, i) = sub_mod(at(i, i), lambda % p_, p_);
  return out;
}

FpMatrix FpMatrix::rref(std::vector<std::size_t>* pivots) const {
  FpMatrix m = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t piv = r;
    while (piv < rows_ && m.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
    }
    const std::uint64_t inv = inv_mod(m.at(r, c), p_);
    for (std::size_t j = 0; j < cols_; ++j) m.at(r, j) = mul_mod(m.at(r, j), inv, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const std::uint64_t f = m.at(i, c);
      for (std::size_t j = 0; j < cols_; ++j) {
        m.at(i, j) = sub_mod(m.at(i, j), mul_mod(f, m.at(r, j), p_), p_);
      }
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots.size();
}

std::vector<FpVector> FpMatrix::nullspace() const {
  std::vector<std::size_t> pivots;
  const FpMatrix r = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    FpVector v(cols_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = sub_mod(0, r.at(k, f), p_);
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix FpMatrix::inverse() const {
  if (!square()) throw Error(Errc::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = rows_;
  FpMatrix aug(n, 2 * n, p_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots;
  const FpMatrix r = aug.rref(&pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(Errc::Singular, "matrix is singular mod " + std::to_string(p_));
  FpMatrix out(n, n, p_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = r.at(i, n + j);
  }
  return out;
}

FpPoly FpMatrix::char_poly() const {
  if (!square()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of non-square matrix");
  FpPoly out{p_, detail::berkowitz(data_, rows_, FpRing{p_})};
  out.trim();
  return out;
}

bool FpMatrix::is_upper_triangular() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < std::min(i, cols_); ++j) {
      if (at(i, j) != 0) return false;
    }
  }
  return true;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

FpMatrix solve_in_span(const FpMatrix& W, const FpMatrix& Y) {
  if (W.rows() != Y.rows()) throw Error(Errc::DimensionMismatch, "solve_in_span");
  const std::size_t n = W.rows(), d = W.cols(), k = Y.cols();
  const std::uint64_t p = W.prime();
  FpMatrix aug(n, d + k, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug.at(i, j) = W.at(i, j);
    for (std::size_t j = 0; j < k; ++j) aug.at(i, d + j) = Y.at(i, j);
  }
  std::vector<std::size_t> pivots;
  const FpMatrix r = aug.rref(&pivots);
  if (pivots.size() < d || (!pivots.empty() && pivots.back() >= d) || (d > 0 && pivots[d - 1] != d - 1)) {
    throw Error(Errc::Internal, "target columns are not in the span of W");
  }
  FpMatrix C(d, k, p);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) C.at(i, j) = r.at(i, d + j);
  }
  return C;
}

std::size_t span_rank(const std::vector<FpVector>& vectors, std::size_t n, std::uint64_t p) {
  if (vectors.empty()) return 0;
  return FpMatrix::from_columns(vectors, n, p).rank();
}

}  // namespace flatq
