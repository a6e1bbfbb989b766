#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatq/commuting_family.hpp"
#include "flatq/error.hpp"
#include "flatq/finite_group.hpp"

namespace flatq {

/// One finite quotient G/H together with its Cayley-graph data.
struct QuotientRecord {
  std::string family;
  std::uint64_t parameter = 0;  // n, m, or the prime p for matrix families
  BigInt index;                 // [G:H] = |group|
  FiniteMetabelian group;
  GeneratingSet generators;
  BigInt diam_bound;            // analytic upper bound on the diameter
  std::optional<std::uint64_t> diam_exact;
  bool experimental = false;

  bool exact() const { return diam_exact.has_value(); }
  std::string mode() const { return exact() ? "exact" : "bound-only"; }
  /// diam_exact when known, otherwise diam_bound.
  BigInt diameter_estimate() const;
};

/// Z_m x| Z_n with m = k^n - 1 and t acting by k; S = {(+-1,0),(0,+-1)}, bound (2n+1)n + n.
/// Errors: Degenerate (m <= 1), OrderMismatch, TooLarge (m beyond 64 bits).
QuotientRecord bs_quotient(std::uint64_t k, std::uint64_t n);

/// (Z_p)^n x| Z_n with the cyclic shift; S = {(sigma,0),(0,1)} symmetrized, bound 2pn^2.
/// Errors: BadParameters.
QuotientRecord wreath_quotient(std::uint64_t p, std::uint64_t n);

/// Gamma_p = Z_p x| (Z_{r_1} + ... + Z_{r_m}) from the index-p subgroup of K.
/// e_j maps to its last coordinate in the triangularizing basis; t_i to the i-th unit of B.
/// The diameter bound is the trivial |G| - 1. Errors: NotSplit, BadPrime.
QuotientRecord matrix_family_quotient(const CommutingFamily& fam, std::uint64_t p,
                                      ExponentPolicy policy = ExponentPolicy::Fermat);

/// Z_m x| Z_n with s = p/q mod m and n = |p^m - q^m|, gated on s^n = 1 mod m.
/// Marked experimental. Errors: BadParameters, InvalidConstruction, TooLarge.
QuotientRecord bpq_quotient(std::uint64_t p, std::uint64_t q, std::uint64_t m);

/// Z_m with S = {+-1}; diameter floor(m/2). A control family that is almost flat.
QuotientRecord cyclic_quotient(std::uint64_t m);

enum class FamilyKind { BS, Wreath, Matrix, Bpq, Cyclic };

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::BS;
  std::uint64_t k = 2;  // bs
  std::uint64_t p = 2;  // wreath, bpq
  std::uint64_t q = 3;  // bpq
  std::uint64_t lo = 0; // parameter range, inclusive (n for bs/wreath, m for bpq/cyclic)
  std::uint64_t hi = 0;
  // matrix family: the first `count` splitting primes outside D
  std::optional<CommutingFamily> matrices;
  std::size_t count = 0;
  ExponentPolicy policy = ExponentPolicy::Fermat;
  std::uint64_t prime_ceiling = 1'000'000;
};

struct SeriesItem {
  std::uint64_t parameter = 0;
  std::optional<QuotientRecord> record;
  std::optional<Error> error;
};

/// Builds every record of the family, filling diam_exact by BFS when the index is
/// at most `bfs_ceiling`. Failures stay attached to their parameter.
/// Errors: InvalidArgument for an empty range.
std::vector<SeriesItem> family_series(const FamilySpec& spec, std::uint64_t bfs_ceiling = kDefaultBfsCeiling);

/// Runs BFS on the record if its index is within the ceiling.
void fill_exact_diameter(QuotientRecord& rec, std::uint64_t bfs_ceiling);

/// Same moduli and the same product for every pair of elements.
bool same_multiplication_table(const FiniteMetabelian& G, const FiniteMetabelian& H,
                               std::uint64_t ceiling = 5000);

}  // namespace flatq
