#include <doctest.h>

#include <random>

#include "flatq/error.hpp"
#include "flatq/number_theory.hpp"
#include "flatq/rational.hpp"

using namespace flatq;

namespace {

// Exhaustive search for k with k * den = num (mod p).
std::uint64_t brute_reduce(long num, long den, std::uint64_t p) {
  const long P = static_cast<long>(p);
  for (long k = 0; k < P; ++k) {
    if (((k * den - num) % P + P) % P == 0) return static_cast<std::uint64_t>(k);
  }
  return p;
}

std::uint64_t brute_order(std::uint64_t k, std::uint64_t m) {
  std::uint64_t x = k % m;
  for (std::uint64_t n = 1;; ++n) {
    if (x == 1 % m) return n;
    x = x * k % m;
  }
}

}  // namespace

TEST_SUITE("exact_arith") {

TEST_CASE("rationals stay reduced with a positive denominator") {
  const Rational q(BigInt(6), BigInt(-4));
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 2);
  CHECK(Rational(0).to_string() == "0");
  CHECK(Rational(BigInt(0), BigInt(5)).denominator() == 1);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), Error);
}

TEST_CASE("parse and print") {
  CHECK(Rational::parse("-4/3").to_string() == "-4/3");
  CHECK(Rational::parse("7").to_string() == "7");
  CHECK(Rational::parse("+6/4").to_string() == "3/2");
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1//2", "1.5", "10/-5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), Error);
  }
}

TEST_CASE("arithmetic") {
  const Rational a = Rational::parse("2/3"), b = Rational::parse("-1/6");
  CHECK(a + b == Rational(1, 2));
  CHECK(a * b == Rational::parse("-1/9"));
  CHECK(a / b == Rational(-4));
  CHECK(pow(a, 3) == Rational::parse("8/27"));
  CHECK(reciprocal(b) == Rational(-6));
  CHECK_THROWS_AS(a / Rational(0), Error);
  CHECK(b < a);
}

TEST_CASE("reduce_mod_p examples") {
  CHECK(reduce_mod_p(Rational::parse("2/3"), 5) == 4);
  CHECK(reduce_mod_p(Rational(0), 7) == 0);
  CHECK(reduce_mod_p(Rational::parse("7/2"), 7) == brute_reduce(7, 2, 7));
  CHECK(reduce_mod_p(Rational::parse("7/2"), 7) == 0);
  CHECK(reduce_mod_p(Rational::parse("-1/3"), 7) == brute_reduce(-1, 3, 7));
  try {
    reduce_mod_p(Rational::parse("1/14"), 7);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DenominatorNotInvertible);
  }
}

TEST_CASE("reduce_mod_p is a ring homomorphism") {
  std::mt19937_64 rng(7);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 101, 1000003};
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t p = primes[rng() % 7];
    auto draw = [&] {
      long den;
      do {
        den = 1 + static_cast<long>(rng() % 50);
      } while (den % static_cast<long>(p) == 0);
      return Rational(BigInt(static_cast<long>(rng() % 2001) - 1000), BigInt(den));
    };
    const Rational q = draw(), r = draw();
    CHECK(reduce_mod_p(q + r, p) == (reduce_mod_p(q, p) + reduce_mod_p(r, p)) % p);
    CHECK(reduce_mod_p(q * r, p) == mul_mod(reduce_mod_p(q, p), reduce_mod_p(r, p), p));
  }
}

TEST_CASE("multiplicative_order examples") {
  CHECK(multiplicative_order(1, 9) == 1);
  CHECK(multiplicative_order(2, 7) == 3);
  for (unsigned n = 2; n <= 20; ++n) {
    const std::uint64_t m = (std::uint64_t{1} << n) - 1;
    CHECK(multiplicative_order(2, from_u64(m)) == brute_order(2, m));
    CHECK(multiplicative_order(2, from_u64(m)) == n);
  }
  try {
    multiplicative_order(6, 9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAUnit);
  }
  CHECK_THROWS_AS(multiplicative_order(1, 1), Error);
}

TEST_CASE("multiplicative_order divides phi") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t m = 2 + rng() % 5000;
    const std::uint64_t k = rng() % m;
    if (gcd_u64(k, m) != 1) continue;
    const BigInt ord = multiplicative_order(from_u64(k), from_u64(m));
    CHECK(ord == brute_order(k, m));
    CHECK(euler_phi(m) % to_u64(ord) == 0);
    CHECK(pow_mod(k, euler_phi(m), m) == 1 % m);
  }
  // A modulus beyond 64 bits with a known factorization: 2 has order 100 mod 2^100 - 1.
  BigInt m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, 100);
  m -= 1;
  CHECK(multiplicative_order(2, m) == 100);
}

TEST_CASE("factorize_big") {
  // (2^61 - 1)(2^31 - 1) * 12 exceeds 64 bits.
  const BigInt p61 = (BigInt(1) << 61) - 1, p31 = (BigInt(1) << 31) - 1;
  const auto f = factorize_big(BigInt(p61 * p31 * 12));
  REQUIRE(f.size() == 4);
  CHECK(f[0] == std::pair<BigInt, unsigned>{2, 2});
  CHECK(f[1] == std::pair<BigInt, unsigned>{3, 1});
  CHECK(f[2].first == p31);
  CHECK(f[3].first == p61);
  CHECK_FALSE(is_prime(BigInt(p61 * p31)));
  // 2^89 - 1 is a Mersenne prime.
  CHECK(is_prime(BigInt((BigInt(1) << 89) - 1)));
  // The order of 2 modulo p61 * p31 is lcm(61, 31).
  CHECK(multiplicative_order(2, BigInt(p61 * p31)) == 61 * 31);
}

TEST_CASE("primality and factoring") {
  CHECK(is_prime(std::uint64_t{2}));
  CHECK_FALSE(is_prime(std::uint64_t{1}));
  CHECK(is_prime(std::uint64_t{1000003}));
  CHECK_FALSE(is_prime(std::uint64_t{3215031751}));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(std::uint64_t{18446744073709551557ULL}));
  CHECK(next_prime(14) == 17);
  const auto f = factorize(std::uint64_t{600851475143ULL});
  REQUIRE(f.size() == 4);
  CHECK(f[0].first == 71);
  CHECK(f[3].first == 6857);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 2 + rng() % 100000;
    bool brute = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) brute = brute && n % d != 0;
    CHECK(is_prime(n) == brute);
  }
}

TEST_CASE("PrimeSet") {
  const PrimeSet D{5, 2, 3};
  CHECK(D.to_string() == "{2,3,5}");
  CHECK(D.contains(3));
  CHECK_FALSE(D.contains(7));
  CHECK_THROWS_AS(PrimeSet({2, 2}), Error);
  CHECK_THROWS_AS(PrimeSet({4}), Error);
  CHECK(D.united(PrimeSet{7, 2}) == PrimeSet{2, 3, 5, 7});
}

TEST_CASE("is_D_integer and denominator_support") {
  CHECK(is_D_integer(Rational::parse("1/6"), PrimeSet{2, 3}));
  CHECK_FALSE(is_D_integer(Rational::parse("1/6"), PrimeSet{2}));
  CHECK(is_D_integer(Rational(5), PrimeSet{}));
  CHECK(denominator_support(Rational::parse("3/20")) == PrimeSet{2, 5});
  CHECK(denominator_support(Rational(7)).empty());
  CHECK(denominator_support(Rational::parse("1/97")) == PrimeSet{97});
}

TEST_CASE("Z_D is closed under + and *") {
  std::mt19937_64 rng(5);
  const PrimeSet D{2, 5};
  const long dens[] = {1, 2, 4, 5, 10, 25, 40};
  for (int i = 0; i < 200; ++i) {
    const Rational q(BigInt(static_cast<long>(rng() % 200) - 100), BigInt(dens[rng() % 7]));
    const Rational r(BigInt(static_cast<long>(rng() % 200) - 100), BigInt(dens[rng() % 7]));
    REQUIRE(is_D_integer(q, D));
    CHECK(is_D_integer(q + r, D));
    CHECK(is_D_integer(q * r, D));
  }
}

}  // TEST_SUITE
