#include "flatq/group_structure.hpp"

#include <algorithm>

#include "flatq/error.hpp"
#include "flatq/number_theory.hpp"

namespace flatq {

namespace {

/// Subgroup generated by `candidates`, keeping only the candidates that enlarge it.
Subgroup generate_trimmed(const SmallGroup& G, const std::vector<std::uint32_t>& candidates) {
  Subgroup acc = generate(G, {});
  std::vector<std::uint32_t> kept;
  for (std::uint32_t c : candidates) {
    if (acc.contains(c)) continue;
    kept.push_back(c);
    acc = generate(G, kept);
  }
  return acc;
}

std::uint32_t a_element(const SmallGroup& S, const Residues& a) {
  return static_cast<std::uint32_t>(S.group().encode_a(a) * S.group().b_order());
}

/// Size of the subgroup of A generated by `gens`, by breadth-first closure over A.
std::uint64_t additive_span_size(const FiniteMetabelian& G, const std::vector<Residues>& gens) {
  const std::uint64_t n = G.a_order();
  std::vector<char> seen(n, 0);
  std::vector<std::uint64_t> found{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Residues x = G.decode_a(found[i]);
    for (const Residues& g : gens) {
      const std::uint64_t y = G.encode_a(G.add_a(x, g));
      if (!seen[y]) {
        seen[y] = 1;
        found.push_back(y);
      }
    }
  }
  return found.size();
}

std::uint64_t additive_order(const FiniteMetabelian& G, const Residues& a) {
  std::uint64_t ord = 1;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::uint64_t m = G.a_moduli()[j];
    ord = lcm_u64(ord, m / gcd_u64(a[j], m));
  }
  return ord;
}

}  // namespace

std::vector<Subgroup> lower_central_series_of(const SmallGroup& G, const Subgroup& H) {
  std::vector<Subgroup> terms{H};
  while (true) {
    Subgroup next = commutator_subgroup(G, terms.back(), H);
    if (next == terms.back()) break;
    terms.push_back(std::move(next));
  }
  return terms;
}

LowerCentralSeries lower_central_series(const FiniteMetabelian& G, std::uint64_t ceiling) {
  const SmallGroup S(G, ceiling);
  LowerCentralSeries out;
  out.terms = lower_central_series_of(S, whole_group(S));

  // Inside A the commutator [x, h] is (h - 1).x, so each term after the first is
  // spanned by (h - 1) applied to generators of the previous one.
  const std::uint64_t nb = G.b_order();
  std::vector<IntMatrix> phi;
  for (std::uint64_t bi = 1; bi < nb; ++bi) phi.push_back(G.action_of(G.decode_b(bi)));
  std::vector<Residues> prev;
  for (const Element& g : G.standard_generators()) {
    if (g.b == G.identity().b) prev.push_back(g.a);
  }
  out.formula_terms.push_back(whole_group(S));
  while (out.formula_terms.size() < out.terms.size()) {
    std::vector<std::uint32_t> idx;
    for (const Residues& x : prev) {
      for (const IntMatrix& m : phi) idx.push_back(a_element(S, G.add_a(G.apply(m, x), G.neg_a(x))));
    }
    Subgroup term = generate_trimmed(S, idx);
    prev.clear();
    for (std::uint32_t g : term.generators) prev.push_back(G.decode(g).a);
    out.formula_terms.push_back(std::move(term));
  }
  out.agrees = out.terms == out.formula_terms;
  out.nilpotent = out.terms.back().is_trivial();
  out.nilpotency_class = out.nilpotent ? out.terms.size() - 1 : 0;
  return out;
}

FiniteMetabelian zp_semidirect(std::uint64_t p, const std::vector<std::uint64_t>& scalars,
                               const std::vector<std::uint64_t>& orders) {
  if (!is_prime(p)) throw Error(Errc::BadParameters, std::to_string(p) + " is not prime");
  if (scalars.size() != orders.size()) throw Error(Errc::BadParameters, "need one order per scalar");
  std::vector<IntMatrix> action;
  for (std::uint64_t k : scalars) action.push_back({{k % p}});
  return FiniteMetabelian({p}, orders, std::move(action));
}

ZpLemmaReport verify_zp_lemma(const FiniteMetabelian& G, std::uint64_t k, std::uint64_t ceiling) {
  if (G.a_rank() != 1 || G.b_rank() == 0) throw Error(Errc::BadParameters, "expected Z_p x| (Z_r1 + ...)");
  const std::uint64_t p = G.a_moduli()[0];
  if (!is_prime(p)) throw Error(Errc::BadParameters, std::to_string(p) + " is not prime");
  if (G.action()[0][0][0] != k % p) throw Error(Errc::BadParameters, "first generator does not act by k");
  const std::uint64_t r1 = G.b_moduli()[0];
  if (k % p == 0 || order_mod_prime(k % p, p) != r1) {
    throw Error(Errc::BadParameters, "r_1 = " + std::to_string(r1) + " is not the order of " + std::to_string(k) +
                                         " mod " + std::to_string(p));
  }
  for (std::uint64_t r : G.b_moduli()) {
    if ((p - 1) % r != 0) throw Error(Errc::BadParameters, std::to_string(r) + " does not divide p - 1");
  }

  const SmallGroup S(G, ceiling);
  const std::vector<Subgroup> lattice = subgroup_lattice(S);
  const Subgroup zp = generate(S, {a_element(S, {1})});
  ZpLemmaReport report;
  for (const Subgroup& N : lattice) {
    if (!is_normal(S, N)) continue;
    ++report.normal_subgroups;
    // Subgroups of G/N are the H containing N, with the same index; H/N is
    // nilpotent iff some term of the series of H falls inside N.
    for (const Subgroup& H : lattice) {
      if (!N.subset_of(H) || S.size() / H.size() >= r1) continue;
      const std::vector<Subgroup> series = lower_central_series_of(S, H);
      if (!series.back().subset_of(N)) continue;
      ++report.nilpotent_premises;
      if (!zp.subset_of(N)) ++report.counterexamples;
    }
  }
  report.holds = report.counterexamples == 0;
  return report;
}

ConjugateGenerationProfile conjugate_generation_profile(const FiniteMetabelian& G, const std::vector<Residues>& R,
                                                        const std::vector<std::size_t>& t, std::uint64_t ceiling) {
  for (const Residues& r : R) {
    if (!G.contains(Element{r, G.identity().b})) throw Error(Errc::InvalidArgument, "R contains a non-element of A");
  }
  for (std::size_t i : t) {
    if (i >= G.b_rank()) throw Error(Errc::InvalidArgument, "B generator index " + std::to_string(i) + " out of range");
  }
  const std::uint64_t a_order = G.a_order();
  if (a_order > ceiling) throw Error(Errc::TooLarge, "|A| exceeds ceiling");

  const std::size_t m = t.size();
  // powers[i][k] = action of t_i^k for k mod r_{t_i}
  std::vector<std::vector<IntMatrix>> powers(m);
  std::vector<std::uint64_t> box(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t r = G.b_moduli()[t[i]];
    box[i] = r / 2;  // |k| <= r/2 already reaches every residue
    Residues b = G.identity().b;
    for (std::uint64_t k = 0; k < r; ++k) {
      b[t[i]] = k;
      powers[i].push_back(G.action_of(b));
    }
  }
  auto residue = [&](std::size_t i, long long k) {
    const auto r = static_cast<long long>(G.b_moduli()[t[i]]);
    return static_cast<std::uint64_t>(((k % r) + r) % r);
  };
  auto conjugates = [&](const std::vector<long long>& k) {
    std::vector<Residues> out;
    for (const Residues& r : R) {
      Residues x = r;
      for (std::size_t i = 0; i < m; ++i) x = G.apply(powers[i][residue(i, k[i])], x);
      out.push_back(std::move(x));
    }
    return out;
  };
  auto span_for = [&](const std::vector<std::uint64_t>& l) {
    std::vector<Residues> gens;
    std::vector<long long> k(m);
    for (std::size_t i = 0; i < m; ++i) k[i] = -static_cast<long long>(l[i]);
    while (true) {
      for (Residues& x : conjugates(k)) gens.push_back(std::move(x));
      std::size_t i = m;
      while (i > 0 && k[i - 1] == static_cast<long long>(l[i - 1])) {
        k[i - 1] = -static_cast<long long>(l[i - 1]);
        --i;
      }
      if (i == 0) break;
      ++k[i - 1];
    }
    return additive_span_size(G, gens);
  };

  if (span_for(box) != a_order) {
    throw Error(Errc::NotNormallyGenerating, "conjugates of R span a proper subgroup of A");
  }

  ConjugateGenerationProfile out;
  out.a_order = a_order;
  // Lexicographic order; the first valid tuple is also minimal, since lowering
  // any coordinate would give a lexicographically smaller valid tuple.
  std::vector<std::uint64_t> l(m, 0);
  while (span_for(l) != a_order) {
    std::size_t i = m;
    while (i > 0 && l[i - 1] == box[i - 1]) {
      l[i - 1] = 0;
      --i;
    }
    l[i - 1] += 1;  // cannot underflow: the full box is valid
  }
  out.l = l;
  for (std::uint64_t x : l) out.l_sum += x;

  std::vector<std::uint64_t> cur(m, 0);
  out.chain.push_back(span_for(cur));
  for (std::size_t i = 0; i < m; ++i) {
    while (cur[i] < l[i]) {
      ++cur[i];
      out.chain.push_back(span_for(cur));
    }
  }
  out.chain_strictly_increasing =
      std::adjacent_find(out.chain.begin(), out.chain.end(), std::greater_equal<>()) == out.chain.end();
  if (m > 0) {
    ++cur[m - 1];
    out.beyond = span_for(cur);
  } else {
    out.beyond = out.chain.back();
  }
  out.stabilized = out.beyond == a_order;

  if (m == 1) {
    std::vector<Residues> gens;
    for (std::uint64_t s = 0; s <= l[0]; ++s) {
      for (int sign : {1, -1}) {
        if (s == 0 && sign < 0) continue;
        const long long k = sign * static_cast<long long>(s);
        for (Residues& x : conjugates({k})) gens.push_back(std::move(x));
        out.step_chain.push_back(additive_span_size(G, gens));
      }
    }
  }

  const std::vector<std::pair<std::uint64_t, unsigned>> f = factorize(a_order);
  out.smallest_prime = f.empty() ? 1 : f.front().first;
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), out.smallest_prime, out.l_sum);
  out.index_bound_holds = from_u64(a_order) >= bound;
  return out;
}

WordLengthCheck conjugate_generation_word_length(const FiniteMetabelian& G, const std::vector<Residues>& R,
                                                 const std::vector<std::size_t>& t,
                                                 const ConjugateGenerationProfile& profile, std::uint64_t ceiling) {
  std::vector<Element> gens;
  const Residues zero_b = G.identity().b;
  for (const Residues& r : R) gens.push_back(Element{r, zero_b});
  for (std::size_t i : t) {
    Element e = G.identity();
    e.b[i] = 1 % G.b_moduli()[i];
    gens.push_back(e);
  }
  const GeneratingSet S(G, gens);
  const std::vector<std::uint32_t> dist = word_lengths(G, S, ceiling);
  WordLengthCheck out;
  const std::uint64_t nb = G.b_order();
  for (std::uint64_t ai = 0; ai < G.a_order(); ++ai) {
    const std::uint32_t d = dist[ai * nb];
    if (d == kUnreached) throw Error(Errc::Internal, "A element not reached by R and t");
    out.max_distance = std::max<std::uint64_t>(out.max_distance, d);
  }
  out.exponent = 1;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < R.size(); ++i) {
    out.exponent = lcm_u64(out.exponent, additive_order(G, R[i]));
    if (std::find(R.begin(), R.begin() + static_cast<std::ptrdiff_t>(i), R[i]) == R.begin() + static_cast<std::ptrdiff_t>(i)) {
      ++distinct;
    }
  }
  const BigInt base = from_u64(2 * profile.l_sum + 1) * from_u64(out.exponent) * from_u64(distinct);
  BigInt lm;
  mpz_ui_pow_ui(lm.get_mpz_t(), profile.l_sum, t.size());
  out.stated_bound = base * lm;
  out.counting_bound = base;
  for (std::uint64_t li : profile.l) out.counting_bound *= from_u64(2 * li + 1);
  return out;
}

}  // namespace flatq
