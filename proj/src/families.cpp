#include "flatq/families.hpp"

#include "flatq/number_theory.hpp"
#include "flatq/polynomial.hpp"
#include "flatq/small_group.hpp"

namespace flatq {

namespace {

/// S = {(+-1, 0), (0, +-1)} in Z_m x| Z_n.
GeneratingSet unit_generators(const FiniteMetabelian& G) {
  return GeneratingSet(G, G.standard_generators());
}

QuotientRecord make_record(std::string family, std::uint64_t parameter, FiniteMetabelian group,
                           GeneratingSet gens, BigInt bound) {
  BigInt index = group.order();
  return QuotientRecord{std::move(family), parameter,  std::move(index), std::move(group),
                        std::move(gens),   std::move(bound), std::nullopt, false};
}

}  // namespace

BigInt QuotientRecord::diameter_estimate() const { return diam_exact ? from_u64(*diam_exact) : diam_bound; }

QuotientRecord bs_quotient(std::uint64_t k, std::uint64_t n) {
  if (k < 2 || n < 1) throw Error(Errc::Degenerate, "need k >= 2 and n >= 1");
  BigInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), k, n);
  big -= 1;
  if (big <= 1) throw Error(Errc::Degenerate, "m = k^n - 1 = " + big.get_str() + " is at most 1");
  if (!fits_u64(big)) throw Error(Errc::TooLarge, "m = k^n - 1 exceeds 64 bits");
  const std::uint64_t m = to_u64(big);
  const BigInt ord = multiplicative_order(from_u64(k), big);
  if (ord != from_u64(n)) {
    throw Error(Errc::OrderMismatch, "order of " + std::to_string(k) + " mod " + std::to_string(m) + " is " +
                                         ord.get_str() + ", not " + std::to_string(n));
  }
  FiniteMetabelian G({m}, {n}, {{{k % m}}});
  GeneratingSet S = unit_generators(G);
  return make_record("bs", n, std::move(G), std::move(S), from_u64((2 * n + 1) * n + n));
}

QuotientRecord wreath_quotient(std::uint64_t p, std::uint64_t n) {
  if (!is_prime(p)) throw Error(Errc::BadParameters, std::to_string(p) + " is not prime");
  if (n < 2) throw Error(Errc::BadParameters, "need n >= 2");
  IntMatrix shift(n, std::vector<std::uint64_t>(n, 0));
  for (std::uint64_t i = 0; i < n; ++i) shift[(i + 1) % n][i] = 1;
  FiniteMetabelian G(Residues(n, p), {n}, {shift});
  Element sigma = G.identity();
  sigma.a[0] = 1;
  Element t = G.identity();
  t.b[0] = 1;
  GeneratingSet S(G, {sigma, t});
  return make_record("wreath", n, std::move(G), std::move(S), from_u64(2 * p) * from_u64(n) * from_u64(n));
}

QuotientRecord matrix_family_quotient(const CommutingFamily& fam, std::uint64_t p, ExponentPolicy policy) {
  const IndexPSubgroup H = index_p_subgroup(fam, p, policy);
  std::vector<IntMatrix> action;
  for (std::uint64_t s : H.induced_scalars) action.push_back({{s}});
  FiniteMetabelian G({p}, H.r, std::move(action));
  std::vector<Element> gens;
  for (std::uint64_t c : H.quotient_functional) {
    Element e = G.identity();
    e.a[0] = c;
    gens.push_back(e);
  }
  std::vector<Element> b_units = G.standard_generators();
  gens.insert(gens.end(), b_units.begin() + 1, b_units.end());
  GeneratingSet S(G, gens);
  BigInt bound = G.order() - 1;
  return make_record("matrix", p, std::move(G), std::move(S), std::move(bound));
}

QuotientRecord bpq_quotient(std::uint64_t p, std::uint64_t q, std::uint64_t m) {
  if (!is_prime(p) || !is_prime(q) || p == q) throw Error(Errc::BadParameters, "p and q must be distinct primes");
  if (m <= 1) throw Error(Errc::Degenerate, "need m >= 2");
  if (m % p == 0 || m % q == 0) throw Error(Errc::BadParameters, "m must be coprime to pq");
  const std::uint64_t s = mul_mod(p % m, inv_mod(q % m, m), m);
  BigInt pm, qm;
  mpz_ui_pow_ui(pm.get_mpz_t(), p, m);
  mpz_ui_pow_ui(qm.get_mpz_t(), q, m);
  const BigInt n = abs(BigInt(pm - qm));
  BigInt check;
  const BigInt base = from_u64(s), mod = from_u64(m);
  mpz_powm(check.get_mpz_t(), base.get_mpz_t(), n.get_mpz_t(), mod.get_mpz_t());
  if (check != 1) {
    throw Error(Errc::InvalidConstruction, "s = " + std::to_string(s) + " has s^n = " + check.get_str() +
                                               " mod " + std::to_string(m) + " for n = " + n.get_str());
  }
  if (!fits_u64(n)) throw Error(Errc::TooLarge, "n = |p^m - q^m| exceeds 64 bits");
  FiniteMetabelian G({m}, {to_u64(n)}, {{{s}}});
  GeneratingSet S = unit_generators(G);
  BigInt bound = G.order() - 1;
  QuotientRecord rec = make_record("bpq", m, std::move(G), std::move(S), std::move(bound));
  rec.experimental = true;
  return rec;
}

QuotientRecord cyclic_quotient(std::uint64_t m) {
  if (m < 2) throw Error(Errc::Degenerate, "need m >= 2");
  FiniteMetabelian G({m}, {}, {});
  GeneratingSet S = unit_generators(G);
  return make_record("cyclic", m, std::move(G), std::move(S), from_u64(m / 2));
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::BS: return "bs";
    case FamilyKind::Wreath: return "wreath";
    case FamilyKind::Matrix: return "matrix";
    case FamilyKind::Bpq: return "bpq";
    case FamilyKind::Cyclic: return "cyclic";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
  for (FamilyKind k : {FamilyKind::BS, FamilyKind::Wreath, FamilyKind::Matrix, FamilyKind::Bpq, FamilyKind::Cyclic}) {
    if (to_string(k) == name) return k;
  }
  throw Error(Errc::InvalidArgument, "unknown family '" + name + "'");
}

void fill_exact_diameter(QuotientRecord& rec, std::uint64_t bfs_ceiling) {
  if (!fits_u64(rec.index) || to_u64(rec.index) > bfs_ceiling) return;
  rec.diam_exact = diameter_bfs(rec.group, rec.generators, bfs_ceiling);
}

std::vector<SeriesItem> family_series(const FamilySpec& spec, std::uint64_t bfs_ceiling) {
  std::vector<std::uint64_t> params;
  if (spec.kind == FamilyKind::Matrix) {
    if (!spec.matrices) throw Error(Errc::InvalidArgument, "matrix family needs matrices");
    if (spec.count == 0) throw Error(Errc::InvalidArgument, "empty prime count");
    std::vector<MonicPoly> polys;
    for (const QMatrix& M : spec.matrices->matrices) polys.push_back(char_poly(M));
    params = splitting_primes(polys, spec.count, spec.matrices->D, spec.prime_ceiling);
  } else {
    if (spec.lo > spec.hi) throw Error(Errc::InvalidArgument, "empty parameter range");
    for (std::uint64_t x = spec.lo; x <= spec.hi; ++x) params.push_back(x);
  }

  std::vector<SeriesItem> out;
  for (std::uint64_t x : params) {
    SeriesItem item;
    item.parameter = x;
    try {
      QuotientRecord rec = [&] {
        switch (spec.kind) {
          case FamilyKind::BS: return bs_quotient(spec.k, x);
          case FamilyKind::Wreath: return wreath_quotient(spec.p, x);
          case FamilyKind::Matrix: return matrix_family_quotient(*spec.matrices, x, spec.policy);
          case FamilyKind::Bpq: return bpq_quotient(spec.p, spec.q, x);
          case FamilyKind::Cyclic: return cyclic_quotient(x);
        }
        throw Error(Errc::Internal, "unhandled family");
      }();
      fill_exact_diameter(rec, bfs_ceiling);
      item.record = std::move(rec);
    } catch (const Error& e) {
      item.error = e;
    }
    out.push_back(std::move(item));
  }
  return out;
}

bool same_multiplication_table(const FiniteMetabelian& G, const FiniteMetabelian& H, std::uint64_t ceiling) {
  if (G.a_moduli() != H.a_moduli() || G.b_moduli() != H.b_moduli()) return false;
  const SmallGroup a(G, ceiling), b(H, ceiling);
  for (std::uint32_t x = 0; x < a.size(); ++x) {
    for (std::uint32_t y = 0; y < a.size(); ++y) {
      if (a.mul(x, y) != b.mul(x, y)) return false;
    }
  }
  return true;
}

}  // namespace flatq
