#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flatq/rational.hpp"

namespace flatq {

// ---------------------------------------------------------------------------
// Word-size modular helpers. These back the F_p layer; moduli are < 2^64.
// ---------------------------------------------------------------------------

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Inverse by the extended Euclidean algorithm; throws NotAUnit when gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Deterministic Miller-Rabin (fixed witness set, exact for all 64-bit inputs).
bool is_prime(std::uint64_t n);

/// Exact below 2^64; above, GMP's Baillie-PSW test with extra Miller-Rabin rounds.
bool is_prime(const BigInt& n);

std::uint64_t next_prime(std::uint64_t n);

/// Prime factorization as (prime, exponent) pairs in ascending order.
/// Trial division, then deterministic primality testing and Pollard rho for the cofactor.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(const BigInt& n);
/// Prime factorization of an arbitrary positive integer (Pollard-Brent above 64 bits).
std::vector<std::pair<BigInt, unsigned>> factorize_big(const BigInt& n);

std::uint64_t euler_phi(std::uint64_t n);

/// Multiplicative order of a unit modulo a prime p (fast path for the F_p layer).
std::uint64_t order_mod_prime(std::uint64_t a, std::uint64_t p);

bool fits_u64(const BigInt& n);
std::uint64_t to_u64(const BigInt& n);
BigInt from_u64(std::uint64_t n);

// ---------------------------------------------------------------------------
// PrimeSet: the finite set D of primes defining the ring Z_D.
// ---------------------------------------------------------------------------

class PrimeSet {
 public:
  PrimeSet() = default;
  /// Rejects duplicates and non-primes; stores the members ascending.
  explicit PrimeSet(std::vector<std::uint64_t> primes);
  PrimeSet(std::initializer_list<std::uint64_t> primes)
      : PrimeSet(std::vector<std::uint64_t>(primes)) {}

  bool contains(std::uint64_t p) const;
  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }

  PrimeSet united(const PrimeSet& other) const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

  std::string to_string() const;

 private:
  std::vector<std::uint64_t> primes_;
};

// ---------------------------------------------------------------------------
// Rational modular arithmetic and Z_D membership.
// ---------------------------------------------------------------------------

/// The residue k in [0, p) with k * den(q) = num(q) (mod p).
/// Throws DenominatorNotInvertible if p divides the denominator.
std::uint64_t reduce_mod_p(const Rational& q, std::uint64_t p);

/// Smallest n >= 1 with k^n = 1 (mod m). Throws NotAUnit if gcd(k, m) != 1.
BigInt multiplicative_order(const BigInt& k, const BigInt& m);

bool is_D_integer(const Rational& q, const PrimeSet& D);

PrimeSet denominator_support(const Rational& q);

}  // namespace flatq
