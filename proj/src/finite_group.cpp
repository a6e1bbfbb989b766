#include "flatq/finite_group.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "flatq/error.hpp"
#include "flatq/number_theory.hpp"

namespace flatq {

namespace {

std::string join_residues(const Residues& r) {
  std::string s = "[";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

std::uint64_t checked_product(const Residues& moduli) {
  std::uint64_t out = 1;
  for (std::uint64_t m : moduli) {
    if (m != 0 && out > std::numeric_limits<std::uint64_t>::max() / m) {
      throw Error(Errc::TooLarge, "group order exceeds 64 bits");
    }
    out *= m;
  }
  return out;
}

}  // namespace

std::string Element::to_string() const { return "(" + join_residues(a) + "," + join_residues(b) + ")"; }

FiniteMetabelian::FiniteMetabelian(Residues a_moduli, Residues b_moduli, std::vector<IntMatrix> action)
    : a_moduli_(std::move(a_moduli)), b_moduli_(std::move(b_moduli)), action_(std::move(action)) {
  for (std::uint64_t m : a_moduli_) {
    if (m == 0) throw Error(Errc::BadParameters, "A moduli must be positive");
  }
  for (std::uint64_t r : b_moduli_) {
    if (r == 0) throw Error(Errc::BadParameters, "B moduli must be positive");
  }
  if (action_.size() != b_moduli_.size()) {
    throw Error(Errc::BadParameters, "need one action matrix per B generator");
  }
  const std::size_t d = a_moduli_.size();
  for (std::size_t i = 0; i < action_.size(); ++i) {
    IntMatrix& X = action_[i];
    if (X.size() != d) throw Error(Errc::BadParameters, "action " + std::to_string(i) + " has wrong size");
    for (std::size_t j = 0; j < d; ++j) {
      if (X[j].size() != d) throw Error(Errc::BadParameters, "action " + std::to_string(i) + " has wrong size");
      for (std::size_t k = 0; k < d; ++k) {
        X[j][k] %= a_moduli_[j];
        // Z_{m_k} -> Z_{m_j} is well defined only if m_k * x = 0 mod m_j.
        if (mul_mod(X[j][k], a_moduli_[k] % a_moduli_[j], a_moduli_[j]) != 0) {
          throw Error(Errc::BadParameters, "action " + std::to_string(i) + " entry (" + std::to_string(j) + "," +
                                               std::to_string(k) + ") is not a homomorphism");
        }
      }
    }
  }
  for (std::size_t i = 0; i < action_.size(); ++i) {
    for (std::size_t j = i + 1; j < action_.size(); ++j) {
      if (mat_mul(action_[i], action_[j]) != mat_mul(action_[j], action_[i])) {
        throw Error(Errc::BadParameters,
                    "actions " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      }
    }
    if (mat_pow(action_[i], b_moduli_[i]) != mat_identity()) {
      throw Error(Errc::BadParameters, "action " + std::to_string(i) + " raised to " +
                                           std::to_string(b_moduli_[i]) + " is not the identity");
    }
  }
}

IntMatrix FiniteMetabelian::mat_identity() const {
  const std::size_t d = a_moduli_.size();
  IntMatrix I(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t j = 0; j < d; ++j) I[j][j] = 1 % a_moduli_[j];
  return I;
}

IntMatrix FiniteMetabelian::mat_mul(const IntMatrix& x, const IntMatrix& y) const {
  const std::size_t d = a_moduli_.size();
  IntMatrix out(d, std::vector<std::uint64_t>(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    const std::uint64_t m = a_moduli_[j];
    for (std::size_t l = 0; l < d; ++l) {
      if (x[j][l] == 0) continue;
      for (std::size_t k = 0; k < d; ++k) out[j][k] = add_mod(out[j][k], mul_mod(x[j][l], y[l][k] % m, m), m);
    }
  }
  return out;
}

IntMatrix FiniteMetabelian::mat_pow(const IntMatrix& x, std::uint64_t e) const {
  IntMatrix result = mat_identity();
  IntMatrix base = x;
  while (e > 0) {
    if (e & 1U) result = mat_mul(result, base);
    e >>= 1;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

BigInt FiniteMetabelian::order() const {
  BigInt out = 1;
  for (std::uint64_t m : a_moduli_) out *= from_u64(m);
  for (std::uint64_t r : b_moduli_) out *= from_u64(r);
  return out;
}

std::uint64_t FiniteMetabelian::a_order() const { return checked_product(a_moduli_); }
std::uint64_t FiniteMetabelian::b_order() const { return checked_product(b_moduli_); }

std::uint64_t FiniteMetabelian::order_u64() const {
  const BigInt n = order();
  if (!fits_u64(n)) throw Error(Errc::TooLarge, "group order exceeds 64 bits");
  return to_u64(n);
}

Element FiniteMetabelian::identity() const {
  return Element{Residues(a_moduli_.size(), 0), Residues(b_moduli_.size(), 0)};
}

bool FiniteMetabelian::contains(const Element& g) const {
  if (g.a.size() != a_moduli_.size() || g.b.size() != b_moduli_.size()) return false;
  for (std::size_t i = 0; i < g.a.size(); ++i) {
    if (g.a[i] >= a_moduli_[i]) return false;
  }
  for (std::size_t i = 0; i < g.b.size(); ++i) {
    if (g.b[i] >= b_moduli_[i]) return false;
  }
  return true;
}

IntMatrix FiniteMetabelian::action_of(const Residues& b) const {
  IntMatrix out = mat_identity();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) out = mat_mul(out, mat_pow(action_[i], b[i]));
  }
  return out;
}

Residues FiniteMetabelian::apply(const IntMatrix& m, const Residues& a) const {
  const std::size_t d = a_moduli_.size();
  Residues out(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    const std::uint64_t mod = a_moduli_[j];
    for (std::size_t k = 0; k < d; ++k) {
      if (m[j][k] != 0 && a[k] != 0) out[j] = add_mod(out[j], mul_mod(m[j][k], a[k] % mod, mod), mod);
    }
  }
  return out;
}

Residues FiniteMetabelian::add_a(const Residues& x, const Residues& y) const {
  Residues out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = add_mod(x[j], y[j], a_moduli_[j]);
  return out;
}

Residues FiniteMetabelian::neg_a(const Residues& x) const {
  Residues out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] == 0 ? 0 : a_moduli_[j] - x[j];
  return out;
}

Residues FiniteMetabelian::add_b(const Residues& x, const Residues& y) const {
  Residues out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = add_mod(x[j], y[j], b_moduli_[j]);
  return out;
}

Element FiniteMetabelian::multiply(const Element& g, const Element& h) const {
  return Element{add_a(g.a, apply(action_of(g.b), h.a)), add_b(g.b, h.b)};
}

Element FiniteMetabelian::invert(const Element& g) const {
  // (a, b)^{-1} = (-(b^{-1}.a), -b)
  Residues nb(g.b.size());
  for (std::size_t j = 0; j < g.b.size(); ++j) nb[j] = g.b[j] == 0 ? 0 : b_moduli_[j] - g.b[j];
  return Element{neg_a(apply(action_of(nb), g.a)), nb};
}

bool FiniteMetabelian::is_abelian() const {
  const IntMatrix I = mat_identity();
  return std::all_of(action_.begin(), action_.end(), [&](const IntMatrix& X) { return X == I; });
}

std::uint64_t FiniteMetabelian::abelian_exponent() const {
  std::uint64_t e = 1;
  for (std::uint64_t m : a_moduli_) e = lcm_u64(e, m);
  for (std::uint64_t r : b_moduli_) e = lcm_u64(e, r);
  return e;
}

std::uint64_t FiniteMetabelian::encode_a(const Residues& a) const {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < a.size(); ++j) idx = idx * a_moduli_[j] + a[j];
  return idx;
}

Residues FiniteMetabelian::decode_a(std::uint64_t index) const {
  Residues a(a_moduli_.size());
  for (std::size_t j = a.size(); j-- > 0;) {
    a[j] = index % a_moduli_[j];
    index /= a_moduli_[j];
  }
  return a;
}

std::uint64_t FiniteMetabelian::encode_b(const Residues& b) const {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < b.size(); ++j) idx = idx * b_moduli_[j] + b[j];
  return idx;
}

Residues FiniteMetabelian::decode_b(std::uint64_t index) const {
  Residues b(b_moduli_.size());
  for (std::size_t j = b.size(); j-- > 0;) {
    b[j] = index % b_moduli_[j];
    index /= b_moduli_[j];
  }
  return b;
}

std::uint64_t FiniteMetabelian::encode(const Element& g) const {
  return encode_a(g.a) * b_order() + encode_b(g.b);
}

Element FiniteMetabelian::decode(std::uint64_t index) const {
  const std::uint64_t nb = b_order();
  return Element{decode_a(index / nb), decode_b(index % nb)};
}

std::vector<Element> FiniteMetabelian::standard_generators() const {
  std::vector<Element> out;
  for (std::size_t j = 0; j < a_moduli_.size(); ++j) {
    Element e = identity();
    e.a[j] = 1 % a_moduli_[j];
    out.push_back(e);
  }
  for (std::size_t j = 0; j < b_moduli_.size(); ++j) {
    Element e = identity();
    e.b[j] = 1 % b_moduli_[j];
    out.push_back(e);
  }
  return out;
}

std::string FiniteMetabelian::to_string() const {
  std::ostringstream os;
  os << "A=" << join_residues(a_moduli_) << " B=" << join_residues(b_moduli_);
  return os.str();
}

GeneratingSet::GeneratingSet(const FiniteMetabelian& G, std::vector<Element> generators, bool symmetrize)
    : symmetric_(symmetrize) {
  const Element e = G.identity();
  for (const Element& g : generators) {
    if (!G.contains(g)) throw Error(Errc::InvalidArgument, "generator " + g.to_string() + " is not in the group");
    if (g == e || std::find(elements_.begin(), elements_.end(), g) != elements_.end()) continue;
    elements_.push_back(g);
  }
  // g and g^{-1} count once, so {1, -1} in Z_9 is a single generator.
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element inv = G.invert(elements_[i]);
    if (std::find(elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(i), inv) ==
        elements_.begin() + static_cast<std::ptrdiff_t>(i)) {
      ++generator_count_;
    }
  }
  const std::size_t given = elements_.size();
  if (!symmetrize) return;
  for (std::size_t i = 0; i < given; ++i) {
    Element inv = G.invert(elements_[i]);
    if (std::find(elements_.begin(), elements_.end(), inv) == elements_.end()) elements_.push_back(std::move(inv));
  }
}

namespace {

/// Precomputed right-multiplication by each generator, keyed by the B index of
/// the current element: (a, b) * (a_s, b_s) = (a + b.a_s, b + b_s).
struct StepTable {
  std::size_t gens = 0;
  std::size_t a_dim = 0;
  std::vector<std::uint64_t> b_next;   // [b * gens + s]
  std::vector<std::uint64_t> a_shift;  // [(b * gens + s) * a_dim + j]
};

StepTable build_steps(const FiniteMetabelian& G, const GeneratingSet& S) {
  StepTable t;
  t.gens = S.elements().size();
  t.a_dim = G.a_rank();
  const std::uint64_t nb = G.b_order();
  t.b_next.resize(nb * t.gens);
  t.a_shift.resize(nb * t.gens * t.a_dim);
  for (std::uint64_t bi = 0; bi < nb; ++bi) {
    const Residues b = G.decode_b(bi);
    const IntMatrix phi = G.action_of(b);
    for (std::size_t s = 0; s < t.gens; ++s) {
      const Element& g = S.elements()[s];
      t.b_next[bi * t.gens + s] = G.encode_b(G.add_b(b, g.b));
      const Residues shift = G.apply(phi, g.a);
      std::copy(shift.begin(), shift.end(), t.a_shift.begin() + static_cast<std::ptrdiff_t>((bi * t.gens + s) * t.a_dim));
    }
  }
  return t;
}

template <class Visit>
CayleyStats run_bfs(const FiniteMetabelian& G, const GeneratingSet& S, std::uint64_t ceiling, bool require_all,
                    Visit&& visit) {
  const BigInt big = G.order();
  if (!fits_u64(big) || to_u64(big) > ceiling) {
    throw Error(Errc::TooLarge, "group order " + big.get_str() + " exceeds BFS ceiling " + std::to_string(ceiling));
  }
  const std::uint64_t n = to_u64(big);
  const std::uint64_t nb = G.b_order();
  const Residues& mods = G.a_moduli();
  const StepTable steps = build_steps(G, S);
  const std::size_t d = steps.a_dim;

  std::vector<std::uint64_t> seen((n + 63) / 64, 0);
  auto mark = [&](std::uint64_t i) {
    std::uint64_t& w = seen[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  };

  CayleyStats stats;
  std::vector<std::uint64_t> frontier{0}, next;
  mark(0);
  visit(0, 0);
  std::uint64_t reached = 1;
  stats.ball_sizes.push_back(1);
  Residues a(d);
  std::uint32_t depth = 0;
  while (!frontier.empty()) {
    next.clear();
    ++depth;
    for (std::uint64_t idx : frontier) {
      std::uint64_t ai = idx / nb;
      const std::uint64_t bi = idx % nb;
      for (std::size_t j = d; j-- > 0;) {
        a[j] = ai % mods[j];
        ai /= mods[j];
      }
      for (std::size_t s = 0; s < steps.gens; ++s) {
        const std::size_t row = bi * steps.gens + s;
        const std::uint64_t* shift = steps.a_shift.data() + row * d;
        std::uint64_t na = 0;
        for (std::size_t j = 0; j < d; ++j) na = na * mods[j] + add_mod(a[j], shift[j], mods[j]);
        const std::uint64_t target = na * nb + steps.b_next[row];
        if (mark(target)) {
          visit(target, depth);
          next.push_back(target);
        }
      }
    }
    if (next.empty()) break;
    reached += next.size();
    stats.ball_sizes.push_back(reached);
    stats.diameter = depth;
    frontier.swap(next);
  }
  if (require_all && reached != n) {
    throw Error(Errc::NotGenerating, "generators reach " + std::to_string(reached) + " of " + std::to_string(n) +
                                         " elements");
  }
  return stats;
}

}  // namespace

CayleyStats cayley_bfs(const FiniteMetabelian& G, const GeneratingSet& S, std::uint64_t ceiling) {
  return run_bfs(G, S, ceiling, true, [](std::uint64_t, std::uint32_t) {});
}

std::uint64_t diameter_bfs(const FiniteMetabelian& G, const GeneratingSet& S, std::uint64_t ceiling) {
  return cayley_bfs(G, S, ceiling).diameter;
}

std::vector<std::uint32_t> cayley_distances(const FiniteMetabelian& G, const GeneratingSet& S,
                                            std::uint64_t ceiling) {
  std::vector<std::uint32_t> dist;
  const BigInt big = G.order();
  if (fits_u64(big) && to_u64(big) <= ceiling) dist.assign(to_u64(big), 0);
  run_bfs(G, S, ceiling, true, [&](std::uint64_t i, std::uint32_t d) { dist[i] = d; });
  return dist;
}

std::vector<std::uint32_t> word_lengths(const FiniteMetabelian& G, const GeneratingSet& S, std::uint64_t ceiling) {
  std::vector<std::uint32_t> dist;
  const BigInt big = G.order();
  if (fits_u64(big) && to_u64(big) <= ceiling) dist.assign(to_u64(big), kUnreached);
  run_bfs(G, S, ceiling, false, [&](std::uint64_t i, std::uint32_t d) { dist[i] = d; });
  return dist;
}

std::uint64_t abelian_diameter_bound(const FiniteMetabelian& G, const GeneratingSet& S) {
  if (!G.is_abelian()) throw Error(Errc::NotAbelian, "B acts nontrivially on A");
  const std::uint64_t e = G.abelian_exponent();
  const std::uint64_t s = S.generator_count();
  if (s != 0 && e > std::numeric_limits<std::uint64_t>::max() / s) throw Error(Errc::TooLarge, "bound overflows");
  return s * e;
}

}  // namespace flatq
