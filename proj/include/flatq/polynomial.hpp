#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatq/number_theory.hpp"
#include "flatq/rational.hpp"

namespace flatq {

/// Dense polynomial over Q, lowest degree first, no trailing zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);
  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);

  /// Parses the textual form "x^2 + 2/3*x - 1".
  static Poly parse(std::string_view text);

  const std::vector<Rational>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool has_integer_coefficients() const;

  Rational operator()(const Rational& x) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Monic polynomial of degree >= 1 with rational coefficients.
class MonicPoly {
 public:
  explicit MonicPoly(Poly p);
  explicit MonicPoly(std::vector<Rational> coefficients) : MonicPoly(Poly(std::move(coefficients))) {}
  static MonicPoly parse(std::string_view text) { return MonicPoly(Poly::parse(text)); }

  const Poly& poly() const { return p_; }
  const std::vector<Rational>& coefficients() const { return p_.coefficients(); }
  std::size_t degree() const { return static_cast<std::size_t>(p_.degree()); }
  Rational constant_term() const { return p_.coefficient(0); }
  std::string to_string() const { return p_.to_string(); }

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  Poly p_;
};

std::ostream& operator<<(std::ostream& os, const MonicPoly& p);

/// Polynomial over F_p, lowest degree first, normalized.
struct FpPoly {
  std::uint64_t p = 2;
  std::vector<std::uint64_t> c;

  long degree() const { return static_cast<long>(c.size()) - 1; }
  std::uint64_t eval(std::uint64_t x) const;
  void trim();
  friend bool operator==(const FpPoly&, const FpPoly&) = default;
  std::string to_string() const;
};

FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
/// Remainder of a modulo a monic divisor.
FpPoly fp_mod(const FpPoly& a, const FpPoly& monic_divisor);
/// Product of (x - r) over the given roots.
FpPoly fp_from_roots(std::span<const std::uint64_t> roots, std::uint64_t p);
/// True iff the monic polynomial f factors into linear factors over F_p.
bool fp_splits(const FpPoly& monic_f);
/// Root multiset by repeated trial division by (x - a), or nullopt if f does not split.
std::optional<std::vector<std::uint64_t>> fp_split_roots(const FpPoly& monic_f);

struct SplitReport {
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> roots;  // ascending, with multiplicity
};

BigInt lcm_denominators(const MonicPoly& P);

/// Coefficient-wise reduction. Throws BadPrime if p divides lcm_denominators(P).
FpPoly reduce_poly_mod_p(const MonicPoly& P, std::uint64_t p);

std::optional<SplitReport> splits_over_fp(const MonicPoly& P, std::uint64_t p);

inline constexpr std::uint64_t kDefaultPrimeCeiling = 1'000'000;

/// First `count` primes outside `skip` at which every polynomial splits with no zero root.
std::vector<std::uint64_t> splitting_primes(const std::vector<MonicPoly>& polys, std::size_t count,
                                            const PrimeSet& skip = {},
                                            std::uint64_t ceiling = kDefaultPrimeCeiling);

/// lcm of the multiplicative orders of the distinct roots of P over F_p.
std::uint64_t lambda_order(const MonicPoly& P, std::uint64_t p);

/// d-th cyclotomic polynomial (memoized, thread-safe).
MonicPoly cyclotomic(std::uint64_t d);

/// True iff every complex root of P is a root of unity.
bool all_roots_roots_of_unity(const MonicPoly& P);

}  // namespace flatq
