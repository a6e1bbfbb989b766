#pragma once

#include <cstdint>
#include <vector>

#include "flatq/finite_group.hpp"
#include "flatq/small_group.hpp"

namespace flatq {

struct LowerCentralSeries {
  // G_1 = G, G_{i+1} = [G_i, G]; the list stops at the first term equal to its successor.
  std::vector<Subgroup> terms;
  // Same chain from G_{i+1} = <(h - 1).x : x in G_i, h in B>, computed inside A.
  std::vector<Subgroup> formula_terms;
  bool agrees = false;
  bool nilpotent = false;
  std::size_t nilpotency_class = 0;  // meaningful only when nilpotent
};

/// Errors: TooLarge.
LowerCentralSeries lower_central_series(const FiniteMetabelian& G, std::uint64_t ceiling = kSubgroupCeiling);

/// Generic series of a subgroup H: H_1 = H, H_{i+1} = [H_i, H].
std::vector<Subgroup> lower_central_series_of(const SmallGroup& G, const Subgroup& H);

/// Z_p x| (Z_{r_1} + ... + Z_{r_m}) where the i-th generator multiplies by scalars[i].
FiniteMetabelian zp_semidirect(std::uint64_t p, const std::vector<std::uint64_t>& scalars,
                               const std::vector<std::uint64_t>& orders);

struct ZpLemmaReport {
  bool holds = false;
  std::size_t normal_subgroups = 0;
  std::size_t nilpotent_premises = 0;  // pairs (N, H/N) with H/N nilpotent of index < r_1
  std::size_t counterexamples = 0;
};

/// For every normal N of G = Z_p x| B: if G/N has a nilpotent subgroup of index
/// below r_1 = ord_p(k), then Z_p x {0} lies in N.
/// Errors: BadParameters (shape, or r_1 != ord_p(k), or r_i not dividing p-1), TooLarge.
ZpLemmaReport verify_zp_lemma(const FiniteMetabelian& G, std::uint64_t k, std::uint64_t ceiling = kSubgroupCeiling);

struct ConjugateGenerationProfile {
  std::vector<std::uint64_t> l;        // lexicographically smallest tuple with A^c = A
  std::uint64_t l_sum = 0;
  std::vector<std::uint64_t> chain;    // |A^c| as the exponents grow toward l, one step at a time
  std::vector<std::uint64_t> step_chain;  // |A^c| as conjugates are added one by one (k = 0, 1, -1, 2, -2, ...)
  std::uint64_t beyond = 0;            // |A^c| one step past l on the last coordinate
  std::uint64_t a_order = 0;
  std::uint64_t smallest_prime = 0;    // smallest prime dividing |A|
  bool chain_strictly_increasing = false;
  bool stabilized = false;             // beyond == |A|
  bool index_bound_holds = false;      // |A| >= p^{l_sum}
};

/// Errors: NotNormallyGenerating, InvalidArgument (bad generator index or vector), TooLarge.
ConjugateGenerationProfile conjugate_generation_profile(const FiniteMetabelian& G, const std::vector<Residues>& R,
                                                        const std::vector<std::size_t>& t,
                                                        std::uint64_t ceiling = kDefaultBfsCeiling);

struct WordLengthCheck {
  std::uint64_t max_distance = 0;  // over A^c, with S = R and the t generators
  std::uint64_t exponent = 0;      // M, the exponent of <R>
  BigInt stated_bound;             // (2l+1) M |R| l^m
  BigInt counting_bound;           // (2l+1) M |R| prod(2 l_i + 1)
};

WordLengthCheck conjugate_generation_word_length(const FiniteMetabelian& G, const std::vector<Residues>& R,
                                                 const std::vector<std::size_t>& t,
                                                 const ConjugateGenerationProfile& profile,
                                                 std::uint64_t ceiling = kDefaultBfsCeiling);

}  // namespace flatq
