#include "flatq/qmatrix.hpp"

#include <sstream>

#include "flatq/detail/berkowitz.hpp"
#include "flatq/error.hpp"

namespace flatq {

namespace {

struct QRing {
  Rational zero() const { return Rational(0); }
  Rational one() const { return Rational(1); }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational neg(const Rational& a) const { return -a; }
};

void require_same_dim(const QMatrix& a, const QMatrix& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "matrix dimensions differ");
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  QMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(Errc::DimensionMismatch, "row " + std::to_string(i) + " has " +
                                               std::to_string(rows[i].size()) + " entries, expected " +
                                               std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  require_same_dim(*this, rhs);
  QMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < n_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

QVector QMatrix::operator*(const QVector& v) const {
  if (v.size() != n_) throw Error(Errc::DimensionMismatch, "matrix-vector product");
  QVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) out[i] += at(i, k) * v[k];
  }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  require_same_dim(*this, rhs);
  QMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
  require_same_dim(*this, rhs);
  QMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
  return out;
}

bool QMatrix::is_zero() const {
  for (const Rational& q : a_) {
    if (!q.is_zero()) return false;
  }
  return true;
}

Rational QMatrix::determinant() const {
  QMatrix m = *this;
  Rational det(1);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && m.at(piv, c).is_zero()) ++piv;
    if (piv == n_) return Rational(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m.at(piv, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    const Rational inv = reciprocal(m.at(c, c));
    for (std::size_t i = c + 1; i < n_; ++i) {
      if (m.at(i, c).is_zero()) continue;
      const Rational f = m.at(i, c) * inv;
      for (std::size_t j = c; j < n_; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

QMatrix QMatrix::inverse() const {
  QMatrix m = *this;
  QMatrix inv = identity(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t piv = c;
    while (piv < n_ && m.at(piv, c).is_zero()) ++piv;
    if (piv == n_) throw Error(Errc::Singular, "matrix is singular");
    if (piv != c) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(m.at(piv, j), m.at(c, j));
        std::swap(inv.at(piv, j), inv.at(c, j));
      }
    }
    const Rational s = reciprocal(m.at(c, c));
    for (std::size_t j = 0; j < n_; ++j) {
      m.at(c, j) *= s;
      inv.at(c, j) *= s;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == c || m.at(i, c).is_zero()) continue;
      const Rational f = m.at(i, c);
      for (std::size_t j = 0; j < n_; ++j) {
        m.at(i, j) -= f * m.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

QMatrix QMatrix::pow(unsigned long k) const {
  QMatrix result = identity(n_);
  QMatrix base = *this;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

FpMatrix QMatrix::reduce_mod(std::uint64_t p) const {
  FpMatrix out(n_, n_, p);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      try {
        out.at(i, j) = reduce_mod_p(at(i, j), p);
      } catch (const Error& e) {
        throw Error(Errc::BadPrime, "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
    }
  }
  return out;
}

std::string QMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? "," : "") << '[';
    for (std::size_t j = 0; j < n_; ++j) os << (j ? "," : "") << at(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

MonicPoly char_poly(const QMatrix& M) {
  if (M.dim() == 0) throw Error(Errc::DimensionMismatch, "empty matrix");
  return MonicPoly(Poly(detail::berkowitz(M.entries(), M.dim(), QRing{})));
}

std::vector<QVector> span_basis(const std::vector<QVector>& vectors) {
  std::vector<QVector> rows;
  for (const QVector& v : vectors) {
    bool nonzero = false;
    for (const Rational& q : v) nonzero = nonzero || !q.is_zero();
    if (nonzero) rows.push_back(v);
  }
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const Rational s = reciprocal(rows[r][c]);
    for (Rational& q : rows[r]) q *= s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace flatq
