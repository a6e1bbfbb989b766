#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatq/rational.hpp"

namespace flatq {

using Residues = std::vector<std::uint64_t>;
using IntMatrix = std::vector<std::vector<std::uint64_t>>;

/// (a, b) with a in A and b in B.
struct Element {
  Residues a;
  Residues b;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
  /// "([a1,...],[b1,...])"
  std::string to_string() const;
};

/// Finite group A x| B with A = Z_{m_1} x ... x Z_{m_a} and B = Z_{r_1} + ... + Z_{r_b}.
/// The i-th generator of B acts on A by the integer matrix action[i]; entry (j, k)
/// sends component k to component j and is read modulo m_j. Products follow
/// (a1, b1)(a2, b2) = (a1 + b1.a2, b1 + b2).
class FiniteMetabelian {
 public:
  /// Throws BadParameters unless each action matrix is a homomorphism, the
  /// actions commute pairwise, and action[i]^{r_i} is the identity.
  FiniteMetabelian(Residues a_moduli, Residues b_moduli, std::vector<IntMatrix> action);

  const Residues& a_moduli() const { return a_moduli_; }
  const Residues& b_moduli() const { return b_moduli_; }
  const std::vector<IntMatrix>& action() const { return action_; }
  std::size_t a_rank() const { return a_moduli_.size(); }
  std::size_t b_rank() const { return b_moduli_.size(); }

  BigInt order() const;
  /// Throw TooLarge when the count does not fit in 64 bits.
  std::uint64_t order_u64() const;
  std::uint64_t a_order() const;
  std::uint64_t b_order() const;

  Element identity() const;
  bool contains(const Element& g) const;
  Element multiply(const Element& g, const Element& h) const;
  Element invert(const Element& g) const;

  /// The matrix by which b acts on A.
  IntMatrix action_of(const Residues& b) const;
  Residues apply(const IntMatrix& m, const Residues& a) const;
  Residues add_a(const Residues& x, const Residues& y) const;
  Residues neg_a(const Residues& x) const;
  Residues add_b(const Residues& x, const Residues& y) const;

  /// True iff every generator of B acts trivially, so that G = A x B.
  bool is_abelian() const;
  /// lcm of all cyclic factor orders; meaningful as the exponent when abelian.
  std::uint64_t abelian_exponent() const;

  // Mixed-radix encoding: A residues (most significant first), then B residues.
  std::uint64_t encode(const Element& g) const;
  Element decode(std::uint64_t index) const;
  std::uint64_t encode_a(const Residues& a) const;
  Residues decode_a(std::uint64_t index) const;
  std::uint64_t encode_b(const Residues& b) const;
  Residues decode_b(std::uint64_t index) const;

  /// Unit vectors of A followed by unit vectors of B.
  std::vector<Element> standard_generators() const;

  std::string to_string() const;

 private:
  IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) const;
  IntMatrix mat_pow(const IntMatrix& x, std::uint64_t e) const;
  IntMatrix mat_identity() const;

  Residues a_moduli_;
  Residues b_moduli_;
  std::vector<IntMatrix> action_;
};

/// Symmetric generating set S used for Cayley graphs.
class GeneratingSet {
 public:
  GeneratingSet() = default;
  /// Drops duplicates and the identity; adds inverses unless `symmetrize` is false.
  GeneratingSet(const FiniteMetabelian& G, std::vector<Element> generators, bool symmetrize = true);

  const std::vector<Element>& elements() const { return elements_; }
  /// Distinct non-identity generators as given, with g and g^{-1} counted once.
  std::size_t generator_count() const { return generator_count_; }
  bool symmetric_closure() const { return symmetric_; }

 private:
  std::vector<Element> elements_;
  std::size_t generator_count_ = 0;
  bool symmetric_ = true;
};

inline constexpr std::uint64_t kDefaultBfsCeiling = 10'000'000;

struct CayleyStats {
  std::uint64_t diameter = 0;
  std::vector<std::uint64_t> ball_sizes;  // |B(r)| for r = 0..diameter
};

/// Breadth-first search from the identity with a bit-packed visited table.
/// Throws NotGenerating if the orbit is smaller than G, TooLarge above `ceiling`.
CayleyStats cayley_bfs(const FiniteMetabelian& G, const GeneratingSet& S,
                       std::uint64_t ceiling = kDefaultBfsCeiling);

std::uint64_t diameter_bfs(const FiniteMetabelian& G, const GeneratingSet& S,
                           std::uint64_t ceiling = kDefaultBfsCeiling);

/// Word length of every element (indexed by encode()).
std::vector<std::uint32_t> cayley_distances(const FiniteMetabelian& G, const GeneratingSet& S,
                                            std::uint64_t ceiling = kDefaultBfsCeiling);

inline constexpr std::uint32_t kUnreached = 0xFFFFFFFFu;

/// Like cayley_distances but S need not generate G; unreached elements get kUnreached.
std::vector<std::uint32_t> word_lengths(const FiniteMetabelian& G, const GeneratingSet& S,
                                        std::uint64_t ceiling = kDefaultBfsCeiling);

/// |S| times the exponent of G; an upper bound on the diameter of an abelian group.
/// Throws NotAbelian.
std::uint64_t abelian_diameter_bound(const FiniteMetabelian& G, const GeneratingSet& S);

}  // namespace flatq
