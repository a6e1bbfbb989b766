#include "flatq/small_group.hpp"

#include <algorithm>
#include <set>

#include "flatq/error.hpp"
#include "flatq/number_theory.hpp"

namespace flatq {

SmallGroup::SmallGroup(const FiniteMetabelian& G, std::uint64_t ceiling) : G_(G) {
  const BigInt order = G.order();
  if (!fits_u64(order) || to_u64(order) > ceiling) {
    throw Error(Errc::TooLarge, "group order " + order.get_str() + " exceeds subgroup ceiling " +
                                    std::to_string(ceiling));
  }
  n_ = static_cast<std::uint32_t>(to_u64(order));
  const std::uint64_t nb = G.b_order();

  // One action matrix per element of B; multiplication is then a + phi(b)a'.
  std::vector<IntMatrix> phi(nb);
  for (std::uint64_t bi = 0; bi < nb; ++bi) phi[bi] = G.action_of(G.decode_b(bi));
  std::vector<Element> elems(n_);
  for (std::uint32_t i = 0; i < n_; ++i) elems[i] = G.decode(i);

  table_.resize(std::size_t{n_} * n_);
  inverse_.resize(n_);
  for (std::uint32_t x = 0; x < n_; ++x) {
    const IntMatrix& m = phi[x % nb];
    for (std::uint32_t y = 0; y < n_; ++y) {
      const Element& ey = elems[y];
      const Residues a = G.add_a(elems[x].a, G.apply(m, ey.a));
      const Residues b = G.add_b(elems[x].b, ey.b);
      const auto z = static_cast<std::uint32_t>(G.encode_a(a) * nb + G.encode_b(b));
      table_[std::size_t{x} * n_ + y] = z;
      if (z == 0) inverse_[x] = y;
    }
  }
  for (const Element& g : G.standard_generators()) {
    const auto i = static_cast<std::uint32_t>(G.encode(g));
    if (i != 0) gens_.push_back(i);
  }
}

bool Subgroup::contains(std::uint32_t x) const { return std::binary_search(elements.begin(), elements.end(), x); }

bool Subgroup::subset_of(const Subgroup& other) const {
  return std::includes(other.elements.begin(), other.elements.end(), elements.begin(), elements.end());
}

Subgroup generate(const SmallGroup& G, const std::vector<std::uint32_t>& gens) {
  std::vector<char> in(G.size(), 0);
  std::vector<std::uint32_t> found{G.identity()};
  in[G.identity()] = 1;
  Subgroup H;
  for (std::uint32_t g : gens) {
    if (g != G.identity()) H.generators.push_back(g);
  }
  // Closure under right multiplication by generators suffices in a finite group.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::uint32_t g : H.generators) {
      const std::uint32_t y = G.mul(found[i], g);
      if (!in[y]) {
        in[y] = 1;
        found.push_back(y);
      }
    }
  }
  std::sort(found.begin(), found.end());
  H.elements = std::move(found);
  return H;
}

Subgroup whole_group(const SmallGroup& G) { return generate(G, G.generators()); }

bool is_normal(const SmallGroup& G, const Subgroup& H) {
  for (std::uint32_t g : G.generators()) {
    for (std::uint32_t h : H.generators) {
      if (!H.contains(G.mul(G.mul(g, h), G.inv(g)))) return false;
    }
  }
  return true;
}

Subgroup commutator_subgroup(const SmallGroup& G, const Subgroup& X, const Subgroup& Y) {
  std::vector<char> seen(G.size(), 0);
  std::vector<std::uint32_t> gens;
  for (std::uint32_t x : X.elements) {
    for (std::uint32_t y : Y.elements) {
      const std::uint32_t c = G.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  Subgroup H = generate(G, gens);
  // Trim the generator list to something small for later normality checks.
  std::vector<std::uint32_t> small;
  Subgroup acc = generate(G, {});
  for (std::uint32_t g : gens) {
    if (acc.contains(g)) continue;
    small.push_back(g);
    acc = generate(G, small);
    if (acc.size() == H.size()) break;
  }
  acc.generators = small;
  return acc;
}

std::vector<Subgroup> subgroup_lattice(const SmallGroup& G) {
  // Every subgroup is a join of cyclic subgroups, so close the cyclic ones under
  // joining with a single cyclic subgroup at a time.
  std::vector<Subgroup> cyclic;
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint32_t x = 0; x < G.size(); ++x) {
    Subgroup C = generate(G, {x});
    if (seen.insert(C.elements).second) cyclic.push_back(std::move(C));
  }
  std::vector<Subgroup> all = cyclic;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (const Subgroup& C : cyclic) {
      if (C.subset_of(all[i])) continue;
      std::vector<std::uint32_t> gens = all[i].generators;
      gens.insert(gens.end(), C.generators.begin(), C.generators.end());
      Subgroup J = generate(G, gens);
      if (seen.insert(J.elements).second) all.push_back(std::move(J));
    }
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  });
  return all;
}

std::vector<Subgroup> normal_subgroups(const SmallGroup& G) {
  std::vector<Subgroup> out;
  for (Subgroup& H : subgroup_lattice(G)) {
    if (is_normal(G, H)) out.push_back(std::move(H));
  }
  return out;
}

}  // namespace flatq
