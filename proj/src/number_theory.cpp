#include "flatq/number_theory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "flatq/error.hpp"

namespace flatq {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  if (m == 0) throw Error(Errc::InvalidArgument, "modulus 0");
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) {
    if (m == 1) return 0;
    throw Error(Errc::NotAUnit,
                std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmall) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool fits_u64(const BigInt& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) throw Error(Errc::TooLarge, n.get_str() + " does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

BigInt from_u64(std::uint64_t n) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
  return out;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime(to_u64(n));
  // Baillie-PSW plus extra Miller-Rabin rounds; no known counterexample.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n < 2) return 2;
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return add_mod(mul_mod(x, x, n), c, n); };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "cannot factor 0");
  std::map<std::uint64_t, unsigned> found;
  for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  split_into(n, found);
  return {found.begin(), found.end()};
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(const BigInt& n) {
  if (n <= 0) throw Error(Errc::InvalidArgument, "cannot factor " + n.get_str());
  return factorize(to_u64(n));
}

namespace {

BigInt pollard_brent_big(const BigInt& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    auto f = [&](const BigInt& x) {
      BigInt y = x * x + c;
      mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
      return y;
    };
    BigInt y = 2, x = 2, g = 1, q = 1, ys = 2, diff;
    const unsigned long m = 128;
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          diff = abs(BigInt(x - y));
          q = q * diff % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        diff = abs(BigInt(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_big(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (fits_u64(n)) {
    for (const auto& [p, e] : factorize(to_u64(n))) out[from_u64(p)] += e;
    return;
  }
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const BigInt d = pollard_brent_big(n);
  split_big(d, out);
  split_big(BigInt(n / d), out);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factorize_big(const BigInt& n) {
  if (n <= 0) throw Error(Errc::InvalidArgument, "cannot factor " + n.get_str());
  std::map<BigInt, unsigned> found;
  BigInt rest = n;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      ++found[BigInt(p)];
      rest /= p;
    }
  }
  split_big(rest, found);
  return {found.begin(), found.end()};
}

std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::uint64_t order_mod_prime(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw Error(Errc::NotAUnit, "0 has no multiplicative order mod " + std::to_string(p));
  std::uint64_t order = p - 1;
  for (const auto& [q, e] : factorize(p - 1)) {
    for (unsigned i = 0; i < e && order % q == 0 && pow_mod(a, order / q, p) == 1; ++i) order /= q;
  }
  return order;
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  if (std::adjacent_find(primes_.begin(), primes_.end()) != primes_.end()) {
    throw Error(Errc::InvalidArgument, "duplicate prime in prime set");
  }
  for (std::uint64_t p : primes_) {
    if (!is_prime(p)) throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
  }
}

bool PrimeSet::contains(std::uint64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

PrimeSet PrimeSet::united(const PrimeSet& other) const {
  std::vector<std::uint64_t> merged;
  std::set_union(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                 std::back_inserter(merged));
  PrimeSet out;
  out.primes_ = std::move(merged);
  return out;
}

std::string PrimeSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < primes_.size(); ++i) os << (i ? "," : "") << primes_[i];
  os << '}';
  return os.str();
}

std::uint64_t reduce_mod_p(const Rational& q, std::uint64_t p) {
  if (p < 2) throw Error(Errc::InvalidArgument, "modulus must be at least 2");
  const BigInt pp = from_u64(p);
  BigInt num = q.numerator() % pp;
  if (num < 0) num += pp;
  const BigInt den = q.denominator() % pp;
  if (den == 0) {
    throw Error(Errc::DenominatorNotInvertible,
                std::to_string(p) + " divides the denominator of " + q.to_string());
  }
  return mul_mod(to_u64(num), inv_mod(to_u64(den), p), p);
}

BigInt multiplicative_order(const BigInt& k, const BigInt& m) {
  if (m < 2) throw Error(Errc::InvalidArgument, "modulus must be at least 2");
  BigInt kk = k % m;
  if (kk < 0) kk += m;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), kk.get_mpz_t(), m.get_mpz_t());
  if (g != 1) {
    throw Error(Errc::NotAUnit, k.get_str() + " is not a unit modulo " + m.get_str());
  }
  // phi(m) = prod p^(e-1) (p - 1), factored from the pieces.
  BigInt order = 1;
  std::map<BigInt, unsigned> phi_factors;
  for (const auto& [p, e] : factorize_big(m)) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
    order *= pe * (p - 1);
    if (e > 1) phi_factors[p] += e - 1;
    for (const auto& [q, f] : factorize_big(BigInt(p - 1))) phi_factors[q] += f;
  }
  BigInt r;
  for (const auto& [q, e] : phi_factors) {
    for (unsigned i = 0; i < e; ++i) {
      const BigInt exp = order / q;
      mpz_powm(r.get_mpz_t(), kk.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
      if (r != 1) break;
      order = exp;
    }
  }
  return order;
}

bool is_D_integer(const Rational& q, const PrimeSet& D) {
  BigInt den = q.denominator();
  for (std::uint64_t p : D.primes()) {
    const BigInt pp = from_u64(p);
    while (mpz_divisible_p(den.get_mpz_t(), pp.get_mpz_t())) den /= pp;
  }
  return den == 1;
}

PrimeSet denominator_support(const Rational& q) {
  std::vector<std::uint64_t> primes;
  for (const auto& [p, e] : factorize(q.denominator())) primes.push_back(p);
  return PrimeSet(std::move(primes));
}

}  // namespace flatq
