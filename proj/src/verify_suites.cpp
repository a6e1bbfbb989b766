#include "flatq/verify_suites.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "flatq/error.hpp"
#include "flatq/families.hpp"
#include "flatq/group_structure.hpp"

namespace flatq {

namespace {

using Suite = std::function<std::vector<CheckResult>()>;

CheckResult guarded(const std::string& suite, const std::string& name, const std::function<std::string(bool&)>& body) {
  CheckResult r{suite, name, false, ""};
  try {
    r.detail = body(r.passed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = e.what();
  }
  return r;
}

std::vector<CheckResult> zp_lemma_suite() {
  struct Case { std::uint64_t p, k, r; };
  std::vector<CheckResult> out;
  for (const Case& c : {Case{7, 2, 3}, Case{5, 2, 4}, Case{31, 2, 5}}) {
    std::ostringstream name;
    name << "Z_" << c.p << " x|_" << c.k << " Z_" << c.r;
    out.push_back(guarded("zp-lemma", name.str(), [&](bool& ok) {
      const ZpLemmaReport rep = verify_zp_lemma(zp_semidirect(c.p, {c.k}, {c.r}), c.k);
      ok = rep.holds;
      std::ostringstream d;
      d << rep.normal_subgroups << " normal subgroups, " << rep.nilpotent_premises << " nilpotent premises, "
        << rep.counterexamples << " counterexamples";
      return d.str();
    }));
  }
  return out;
}

std::vector<CheckResult> lcs_suite() {
  struct Case {
    std::string name;
    std::function<FiniteMetabelian()> make;
    bool nilpotent;
  };
  const std::vector<Case> cases = {
      {"Z_7 x|_2 Z_3", [] { return bs_quotient(2, 3).group; }, false},
      {"Z_15 x|_2 Z_4", [] { return bs_quotient(2, 4).group; }, false},
      {"Z_8 x|_3 Z_2", [] { return bs_quotient(3, 2).group; }, true},
      {"(Z_2)^2 x| Z_2", [] { return wreath_quotient(2, 2).group; }, true},
      {"(Z_2)^3 x| Z_3", [] { return wreath_quotient(2, 3).group; }, false},
      {"(Z_2)^4 x| Z_4", [] { return wreath_quotient(2, 4).group; }, true},
      {"(Z_3)^3 x| Z_3", [] { return wreath_quotient(3, 3).group; }, true},
      {"Z_5 x|_2 Z_4", [] { return zp_semidirect(5, {2}, {4}); }, false},
      {"Z_2 x Z_4", [] { return FiniteMetabelian({2, 4}, {}, {}); }, true},
  };
  std::vector<CheckResult> out;
  for (const Case& c : cases) {
    out.push_back(guarded("lcs", c.name, [&](bool& ok) {
      const LowerCentralSeries s = lower_central_series(c.make());
      ok = s.agrees && s.nilpotent == c.nilpotent;
      std::ostringstream d;
      d << "sizes";
      for (const Subgroup& t : s.terms) d << ' ' << t.size();
      d << (s.agrees ? ", formula agrees" : ", formula disagrees");
      if (s.nilpotent) d << ", class " << s.nilpotency_class;
      return d.str();
    }));
  }
  return out;
}

std::vector<CheckResult> conj_gen_suite() {
  struct Case {
    std::string name;
    std::function<FiniteMetabelian()> make;
    std::vector<Residues> R;
    std::vector<std::size_t> t;
    std::vector<std::uint64_t> expected_l;
  };
  const std::vector<Case> cases = {
      {"(Z_2)^5 x| Z_5, R = {delta_0}", [] { return wreath_quotient(2, 5).group; }, {{1, 0, 0, 0, 0}}, {0}, {2}},
      {"(Z_3)^3 x| Z_3, R = {delta_0}", [] { return wreath_quotient(3, 3).group; }, {{1, 0, 0}}, {0}, {1}},
      {"(Z_2)^6 x| Z_6, R = {delta_0}", [] { return wreath_quotient(2, 6).group; }, {{1, 0, 0, 0, 0, 0}}, {0}, {3}},
      {"(Z_2)^6 x| Z_6, R = {delta_0, delta_3}", [] { return wreath_quotient(2, 6).group; },
       {{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}}, {0}, {1}},
      {"Z_2 x Z_2 x Z_3, R generating A", [] { return FiniteMetabelian({2, 2}, {3}, {{{1, 0}, {0, 1}}}); },
       {{1, 0}, {0, 1}}, {0}, {0}},
  };
  std::vector<CheckResult> out;
  for (const Case& c : cases) {
    out.push_back(guarded("conj-gen", c.name, [&](bool& ok) {
      const FiniteMetabelian G = c.make();
      const ConjugateGenerationProfile prof = conjugate_generation_profile(G, c.R, c.t);
      const WordLengthCheck wl = conjugate_generation_word_length(G, c.R, c.t, prof);
      const bool words_ok = from_u64(wl.max_distance) <= wl.counting_bound &&
                            (prof.l_sum == 0 || from_u64(wl.max_distance) <= wl.stated_bound);
      ok = prof.l == c.expected_l && prof.stabilized && prof.index_bound_holds && prof.chain_strictly_increasing &&
           words_ok;
      std::ostringstream d;
      d << "l =";
      for (std::uint64_t x : prof.l) d << ' ' << x;
      d << ", chain";
      for (std::uint64_t x : prof.chain) d << ' ' << x;
      d << ", |A| = " << prof.a_order << " >= " << prof.smallest_prime << "^" << prof.l_sum << ", max word length "
        << wl.max_distance << " <= " << (prof.l_sum == 0 ? wl.counting_bound : wl.stated_bound);
      return d.str();
    }));
  }
  return out;
}

std::vector<CheckResult> abelian_diam_suite() {
  std::vector<CheckResult> out;
  struct Fixed {
    Residues moduli;
    std::vector<Residues> gens;
    std::uint64_t bound, diameter;
  };
  for (const Fixed& f : {Fixed{{2, 2}, {{1, 0}, {0, 1}}, 4, 2}, Fixed{{9}, {{1}}, 9, 4},
                         Fixed{{3, 3, 3}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 9, 3}}) {
    std::ostringstream name;
    name << "Z";
    for (std::uint64_t m : f.moduli) name << '_' << m;
    out.push_back(guarded("abelian-diam", name.str(), [&](bool& ok) {
      const FiniteMetabelian G(f.moduli, {}, {});
      std::vector<Element> gens;
      for (const Residues& a : f.gens) gens.push_back(Element{a, {}});
      const GeneratingSet S(G, gens);
      const std::uint64_t d = diameter_bfs(G, S), b = abelian_diameter_bound(G, S);
      ok = d == f.diameter && b == f.bound;
      return "diameter " + std::to_string(d) + ", bound " + std::to_string(b);
    }));
  }

  // Random abelian groups Z_{m_1} x ... x Z_{m_a} with unit vectors plus random extras.
  std::mt19937_64 rng(20240611);
  std::size_t failures = 0, total = 0;
  std::string worst;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rank = 1 + rng() % 3;
    Residues moduli;
    for (std::size_t j = 0; j < rank; ++j) moduli.push_back(2 + rng() % 11);
    const FiniteMetabelian G(moduli, {}, {});
    std::vector<Element> gens;
    for (std::size_t j = 0; j < rank; ++j) {
      Element e = G.identity();
      e.a[j] = 1;
      gens.push_back(e);
    }
    for (std::size_t extra = rng() % 3; extra > 0; --extra) {
      Element e = G.identity();
      for (std::size_t j = 0; j < rank; ++j) e.a[j] = rng() % moduli[j];
      gens.push_back(e);
    }
    const GeneratingSet S(G, gens);
    const std::uint64_t d = diameter_bfs(G, S), b = abelian_diameter_bound(G, S);
    ++total;
    if (d > b) {
      ++failures;
      worst = G.to_string();
    }
  }
  out.push_back(CheckResult{"abelian-diam", "60 random abelian groups", failures == 0,
                            std::to_string(total - failures) + "/" + std::to_string(total) + " within bound" +
                                (worst.empty() ? "" : ", failed on " + worst)});
  return out;
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> all = {
      {"zp-lemma", zp_lemma_suite},
      {"lcs", lcs_suite},
      {"conj-gen", conj_gen_suite},
      {"abelian-diam", abelian_diam_suite},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, _] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& name) {
  std::vector<CheckResult> out;
  for (const auto& [suite_name, run] : suites()) {
    if (name != "all" && name != suite_name) continue;
    std::vector<CheckResult> part = run();
    out.insert(out.end(), part.begin(), part.end());
  }
  if (out.empty() && name != "all") throw Error(Errc::InvalidArgument, "unknown suite '" + name + "'");
  return out;
}

}  // namespace flatq
