#pragma once

#include <cstddef>
#include <vector>

namespace flatq::detail {

// Division-free characteristic polynomial (Berkowitz). `a` is row-major n x n.
// Returns det(xI - A) lowest degree first, leading coefficient one.
// Ring must provide zero(), one(), add, sub, mul, neg.
template <class T, class Ring>
std::vector<T> berkowitz(const std::vector<T>& a, std::size_t n, const Ring& ring) {
  auto at = [&](std::size_t i, std::size_t j) -> const T& { return a[i * n + j]; };
  std::vector<T> v{ring.one()};  // highest degree first
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t k = r - 1;  // new row/column index
    // Toeplitz column: t0 = 1, t1 = -a_kk, t_j = -R A^{j-2} C for j >= 2.
    std::vector<T> t(r + 1, ring.zero());
    t[0] = ring.one();
    t[1] = ring.neg(at(k, k));
    std::vector<T> x(k);  // A_{k}^{j} C, starting with C
    for (std::size_t i = 0; i < k; ++i) x[i] = at(i, k);
    for (std::size_t j = 2; j <= r; ++j) {
      T s = ring.zero();
      for (std::size_t i = 0; i < k; ++i) s = ring.add(s, ring.mul(at(k, i), x[i]));
      t[j] = ring.neg(s);
      if (j == r) break;
      std::vector<T> y(k, ring.zero());
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l) y[i] = ring.add(y[i], ring.mul(at(i, l), x[l]));
      }
      x = std::move(y);
    }
    std::vector<T> next(r + 1, ring.zero());
    for (std::size_t i = 0; i <= r; ++i) {
      for (std::size_t j = 0; j < v.size() && j <= i; ++j) {
        next[i] = ring.add(next[i], ring.mul(t[i - j], v[j]));
      }
    }
    v = std::move(next);
  }
  return {v.rbegin(), v.rend()};
}

}  // namespace flatq::detail
