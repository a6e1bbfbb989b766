#pragma once

#include <cstdint>
#include <vector>

#include "flatq/finite_group.hpp"

namespace flatq {

inline constexpr std::uint64_t kSubgroupCeiling = 2000;

/// Multiplication table of a small FiniteMetabelian; elements are the encode() indices.
class SmallGroup {
 public:
  /// Throws TooLarge if |G| exceeds `ceiling`.
  explicit SmallGroup(const FiniteMetabelian& G, std::uint64_t ceiling = kSubgroupCeiling);

  const FiniteMetabelian& group() const { return G_; }
  std::uint32_t size() const { return n_; }
  std::uint32_t identity() const { return 0; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return table_[std::size_t{x} * n_ + y]; }
  std::uint32_t inv(std::uint32_t x) const { return inverse_[x]; }
  std::uint32_t commutator(std::uint32_t x, std::uint32_t y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }
  const std::vector<std::uint32_t>& generators() const { return gens_; }

 private:
  FiniteMetabelian G_;
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> gens_;
};

struct Subgroup {
  std::vector<std::uint32_t> elements;    // sorted
  std::vector<std::uint32_t> generators;  // a generating set, not necessarily minimal

  std::size_t size() const { return elements.size(); }
  bool contains(std::uint32_t x) const;
  bool is_trivial() const { return elements.size() == 1; }
  bool subset_of(const Subgroup& other) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

Subgroup generate(const SmallGroup& G, const std::vector<std::uint32_t>& gens);
Subgroup whole_group(const SmallGroup& G);
bool is_normal(const SmallGroup& G, const Subgroup& H);

/// <[x, y] : x in X, y in Y>
Subgroup commutator_subgroup(const SmallGroup& G, const Subgroup& X, const Subgroup& Y);

/// Every subgroup, ordered by size and then by element list.
std::vector<Subgroup> subgroup_lattice(const SmallGroup& G);
std::vector<Subgroup> normal_subgroups(const SmallGroup& G);

}  // namespace flatq
