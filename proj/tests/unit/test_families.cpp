#include <doctest.h>

#include <functional>

#include "flatq/error.hpp"
#include "flatq/families.hpp"
#include "flatq/number_theory.hpp"

using namespace flatq;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

QMatrix scalar(long k) { return QMatrix::from_rows({{Rational(k)}}); }

}  // namespace

TEST_SUITE("families") {

TEST_CASE("bs_quotient examples") {
  struct Case { std::uint64_t k, n, m, index, bound; };
  for (const Case& c : {Case{2, 3, 7, 21, 24}, Case{2, 4, 15, 60, 40}, Case{3, 2, 8, 16, 12}, Case{2, 2, 3, 6, 12}}) {
    CAPTURE(c.n);
    const QuotientRecord r = bs_quotient(c.k, c.n);
    CHECK(r.index == c.index);
    CHECK(r.diam_bound == c.bound);
    CHECK(r.group.a_moduli() == Residues{c.m});
    CHECK(r.group.b_moduli() == Residues{c.n});
    CHECK(r.family == "bs");
    CHECK(r.mode() == "bound-only");
    // S = {(+-1, 0), (0, t^+-1)}: two generators, four elements.
    CHECK(r.generators.generator_count() == 2);
  }
  CHECK(code_of([] { bs_quotient(1, 3); }) == Errc::Degenerate);
  CHECK(code_of([] { bs_quotient(2, 1); }) == Errc::Degenerate);
  CHECK(code_of([] { bs_quotient(2, 70); }) == Errc::TooLarge);
}

TEST_CASE("bs_quotient order check") {
  for (std::uint64_t k = 2; k <= 5; ++k) {
    for (std::uint64_t n = 1; n <= 10; ++n) {
      if (k == 2 && n == 1) continue;
      const QuotientRecord r = bs_quotient(k, n);
      CHECK(multiplicative_order(from_u64(k), from_u64(r.group.a_moduli()[0])) == n);
    }
  }
}

TEST_CASE("wreath_quotient examples") {
  struct Case { std::uint64_t p, n, index, bound; };
  for (const Case& c : {Case{2, 2, 8, 16}, Case{2, 3, 24, 36}, Case{3, 2, 18, 24}}) {
    const QuotientRecord r = wreath_quotient(c.p, c.n);
    CHECK(r.index == c.index);
    CHECK(r.diam_bound == c.bound);
  }
  for (std::uint64_t n = 2; n <= 10; ++n) CHECK(wreath_quotient(2, n).group.order() == (BigInt(1) << n) * n);
  CHECK(code_of([] { wreath_quotient(4, 3); }) == Errc::BadParameters);
  CHECK(code_of([] { wreath_quotient(2, 1); }) == Errc::BadParameters);
}

TEST_CASE("exact diameters stay below the analytic bounds") {
  for (std::uint64_t n = 2; n <= 9; ++n) {
    QuotientRecord bs = bs_quotient(2, n), wr = wreath_quotient(2, n);
    fill_exact_diameter(bs, kDefaultBfsCeiling);
    fill_exact_diameter(wr, kDefaultBfsCeiling);
    REQUIRE(bs.exact());
    REQUIRE(wr.exact());
    CHECK(from_u64(*bs.diam_exact) <= bs.diam_bound);
    CHECK(from_u64(*wr.diam_exact) <= wr.diam_bound);
  }
  QuotientRecord w22 = wreath_quotient(2, 2);
  fill_exact_diameter(w22, 100);
  CHECK(w22.diam_exact == 4);
  QuotientRecord big = bs_quotient(2, 12);
  fill_exact_diameter(big, 1000);
  CHECK_FALSE(big.exact());
  CHECK(big.diameter_estimate() == big.diam_bound);
}

TEST_CASE("matrix_family_quotient") {
  const QuotientRecord r = matrix_family_quotient(validate_family({scalar(2)}), 7);
  CHECK(r.index == 21);
  CHECK(r.group.b_moduli() == Residues{3});
  CHECK(same_multiplication_table(r.group, bs_quotient(2, 3).group));

  const QuotientRecord z5 = matrix_family_quotient(validate_family({QMatrix::identity(1)}), 5);
  CHECK(z5.index == 5);
  CHECK(z5.group.is_abelian());

  // Z_p x|_k Z_n with ord_p(k) = n, p | k^n - 1: the same table as zp-type construction.
  for (auto [k, p] : {std::pair<long, std::uint64_t>{2, 31}, {3, 13}, {5, 11}}) {
    const QuotientRecord m = matrix_family_quotient(validate_family({scalar(k)}), p, ExponentPolicy::ExactOrder);
    const std::uint64_t n = order_mod_prime(static_cast<std::uint64_t>(k), p);
    CHECK(m.group.b_moduli() == Residues{n});
    CHECK(same_multiplication_table(m.group, FiniteMetabelian({p}, {n}, {{{static_cast<std::uint64_t>(k) % p}}})));
  }
}

TEST_CASE("same_multiplication_table tells groups apart") {
  CHECK_FALSE(same_multiplication_table(FiniteMetabelian({7}, {3}, {{{2}}}), FiniteMetabelian({7}, {3}, {{{4}}})));
  CHECK_FALSE(same_multiplication_table(FiniteMetabelian({6}, {}, {}), FiniteMetabelian({2, 3}, {}, {})));
}

TEST_CASE("bpq_quotient validity gate") {
  CHECK(code_of([] { bpq_quotient(2, 3, 5); }) == Errc::InvalidConstruction);
  CHECK(code_of([] { bpq_quotient(2, 3, 7); }) == Errc::InvalidConstruction);
  CHECK(code_of([] { bpq_quotient(2, 3, 6); }) == Errc::BadParameters);
  CHECK(code_of([] { bpq_quotient(2, 2, 5); }) == Errc::BadParameters);
  // s = 2 * 7^{-1} = 1 mod 5: trivial action, always valid.
  const QuotientRecord r = bpq_quotient(2, 7, 5);
  CHECK(r.experimental);
  CHECK(r.group.is_abelian());
  CHECK(r.group.b_moduli() == Residues{to_u64(abs(BigInt(32) - BigInt(16807)))});
}

TEST_CASE("cyclic control family") {
  for (std::uint64_t m = 2; m <= 40; ++m) {
    QuotientRecord r = cyclic_quotient(m);
    fill_exact_diameter(r, 1000);
    CHECK(r.diam_exact == m / 2);
    CHECK(r.diam_bound == m / 2);
  }
}

TEST_CASE("family_series") {
  FamilySpec bs;
  bs.kind = FamilyKind::BS;
  bs.k = 2;
  bs.lo = 2;
  bs.hi = 12;
  const std::vector<SeriesItem> items = family_series(bs, 1'000'000);
  REQUIRE(items.size() == 11);
  for (const SeriesItem& it : items) {
    REQUIRE(it.record);
    CHECK(it.record->exact());
  }
  CHECK(items.back().record->index == 49140);

  bs.hi = 25;
  const std::vector<SeriesItem> wide = family_series(bs, 1'000'000);
  for (const SeriesItem& it : wide) {
    REQUIRE(it.record);
    CHECK(it.record->exact() == (it.record->index <= 1'000'000));
  }
  CHECK_FALSE(wide.back().record->exact());

  FamilySpec wr;
  wr.kind = FamilyKind::Wreath;
  wr.p = 2;
  wr.lo = 2;
  wr.hi = 12;
  const std::vector<SeriesItem> w = family_series(wr, 1'000'000);
  CHECK(w.back().record->index == 49152);

  // Constructor errors stay attached to their item.
  FamilySpec bad;
  bad.kind = FamilyKind::Bpq;
  bad.p = 2;
  bad.q = 3;
  bad.lo = 5;
  bad.hi = 7;
  const std::vector<SeriesItem> b = family_series(bad, 1000);
  REQUIRE(b.size() == 3);
  CHECK(b[0].error->code() == Errc::InvalidConstruction);
  CHECK(b[1].error->code() == Errc::BadParameters);
  CHECK(b[2].error->code() == Errc::InvalidConstruction);

  FamilySpec mat;
  mat.kind = FamilyKind::Matrix;
  mat.matrices = validate_family({scalar(2)});
  mat.count = 3;
  const std::vector<SeriesItem> m = family_series(mat, 1000);
  REQUIRE(m.size() == 3);
  CHECK(m[0].parameter == 3);
  CHECK(m[1].parameter == 5);
  CHECK(m[2].parameter == 7);

  FamilySpec empty = wr;
  empty.lo = 5;
  empty.hi = 4;
  CHECK(code_of([&] { family_series(empty); }) == Errc::InvalidArgument);
}

TEST_CASE("family kind names") {
  for (FamilyKind k : {FamilyKind::BS, FamilyKind::Wreath, FamilyKind::Matrix, FamilyKind::Bpq, FamilyKind::Cyclic}) {
    CHECK(parse_family_kind(to_string(k)) == k);
  }
  CHECK(code_of([] { parse_family_kind("lamplighter"); }) == Errc::InvalidArgument);
}

}  // TEST_SUITE
