#include "flatq/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

#include "flatq/error.hpp"

namespace flatq {

// ----------------------------------------------------------------------------
// Poly
// ----------------------------------------------------------------------------

Poly::Poly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool Poly::has_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.is_integer(); });
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  if (degree() < divisor.degree()) return {Poly{}, *this};
  std::vector<Rational> rem = c_;
  const std::size_t dd = divisor.c_.size() - 1;
  std::vector<Rational> quot(c_.size() - dd);
  const Rational lead_inv = reciprocal(divisor.c_.back());
  const bool monic = divisor.c_.back() == Rational(1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational& top = rem[k + dd];
    if (top.is_zero()) continue;
    const Rational q = monic ? top : top * lead_inv;
    for (std::size_t j = 0; j <= dd; ++j) {
      if (!divisor.c_[j].is_zero()) rem[k + j] -= q * divisor.c_[j];
    }
    quot[k] = q;
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& c = c_[k];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    const Rational mag = negative ? -c : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1)) os << mag << '*';
    os << 'x';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

Poly Poly::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");

  std::vector<std::string> terms;
  std::size_t start = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^') {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));

  std::map<std::size_t, Rational> acc;
  for (const std::string& term : terms) {
    const auto bad = [&] {
      return Error(Errc::ParseError, "bad term '" + term + "' in polynomial '" + std::string(text) + "'");
    };
    const std::size_t xpos = term.find('x');
    if (xpos == std::string::npos) {
      acc[0] += Rational::parse(term);
      continue;
    }
    std::string coef = term.substr(0, xpos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    Rational c;
    if (coef.empty() || coef == "+") {
      c = 1;
    } else if (coef == "-") {
      c = -1;
    } else {
      c = Rational::parse(coef);
    }
    std::size_t deg = 1;
    const std::string rest = term.substr(xpos + 1);
    if (!rest.empty()) {
      if (rest.size() < 2 || rest[0] != '^') throw bad();
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(rest[i]))) throw bad();
      }
      deg = std::stoul(rest.substr(1));
    }
    acc[deg] += c;
  }
  std::vector<Rational> coeffs(acc.rbegin()->first + 1);
  for (const auto& [d, c] : acc) coeffs[d] = c;
  return Poly(std::move(coeffs));
}

// ----------------------------------------------------------------------------
// MonicPoly
// ----------------------------------------------------------------------------

MonicPoly::MonicPoly(Poly p) : p_(std::move(p)) {
  if (p_.degree() < 1) throw Error(Errc::InvalidArgument, "monic polynomial must have degree >= 1");
  if (p_.leading() != Rational(1)) {
    throw Error(Errc::InvalidArgument, "polynomial '" + p_.to_string() + "' is not monic");
  }
}

std::ostream& operator<<(std::ostream& os, const MonicPoly& p) { return os << p.to_string(); }

// ----------------------------------------------------------------------------
// F_p polynomials
// ----------------------------------------------------------------------------

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t FpPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, p), *it, p);
  return acc;
}

std::string FpPoly::to_string() const {
  std::vector<Rational> q;
  q.reserve(c.size());
  for (std::uint64_t v : c) q.emplace_back(from_u64(v));
  return Poly(std::move(q)).to_string();
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  FpPoly out{a.p, {}};
  if (a.c.empty() || b.c.empty()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      out.c[i + j] = add_mod(out.c[i + j], mul_mod(a.c[i], b.c[j], a.p), a.p);
    }
  }
  out.trim();
  return out;
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& f) {
  const std::uint64_t p = a.p;
  FpPoly r = a;
  const long df = f.degree();
  for (long k = r.degree(); k >= df; --k) {
    const std::uint64_t top = r.c[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    for (long j = 0; j <= df; ++j) {
      auto& slot = r.c[static_cast<std::size_t>(k - df + j)];
      slot = sub_mod(slot, mul_mod(top, f.c[static_cast<std::size_t>(j)], p), p);
    }
  }
  r.trim();
  return r;
}

FpPoly fp_from_roots(std::span<const std::uint64_t> roots, std::uint64_t p) {
  FpPoly out{p, {1}};
  for (std::uint64_t r : roots) out = fp_mul(out, FpPoly{p, {sub_mod(0, r % p, p), 1}});
  return out;
}

bool fp_splits(const FpPoly& f) {
  const long d = f.degree();
  if (d <= 1) return true;
  const std::uint64_t p = f.p;
  // x^p mod f by square-and-multiply.
  FpPoly result{p, {1}};
  FpPoly base = fp_mod(FpPoly{p, {0, 1}}, f);
  for (std::uint64_t e = p; e > 0; e >>= 1) {
    if (e & 1U) result = fp_mod(fp_mul(result, base), f);
    base = fp_mod(fp_mul(base, base), f);
  }
  // g = x^p - x mod f; f splits iff f | g^deg(f).
  FpPoly g = result;
  if (g.c.size() < 2) g.c.resize(2, 0);
  g.c[1] = sub_mod(g.c[1], 1, p);
  g.trim();
  g = fp_mod(g, f);
  FpPoly acc{p, {1}};
  for (long i = 0; i < d; ++i) {
    acc = fp_mod(fp_mul(acc, g), f);
    if (acc.c.empty()) return true;
  }
  return acc.c.empty();
}

std::optional<std::vector<std::uint64_t>> fp_split_roots(const FpPoly& monic_f) {
  if (!fp_splits(monic_f)) return std::nullopt;
  const std::uint64_t p = monic_f.p;
  std::vector<std::uint64_t> roots;
  std::vector<std::uint64_t> cur = monic_f.c;
  for (std::uint64_t a = 0; a < p && cur.size() > 1; ++a) {
    for (;;) {
      // Synthetic division by (x - a).
      std::vector<std::uint64_t> q(cur.size() - 1);
      std::uint64_t carry = 0;
      for (std::size_t k = cur.size(); k-- > 1;) {
        carry = add_mod(mul_mod(carry, a, p), cur[k], p);
        q[k - 1] = carry;
      }
      const std::uint64_t rem = add_mod(mul_mod(carry, a, p), cur[0], p);
      if (rem != 0) break;
      roots.push_back(a);
      cur = std::move(q);
      if (cur.size() <= 1) break;
    }
  }
  if (cur.size() > 1) return std::nullopt;
  return roots;
}

// ----------------------------------------------------------------------------
// Splitting, orders, roots of unity
// ----------------------------------------------------------------------------

BigInt lcm_denominators(const MonicPoly& P) {
  BigInt l = 1;
  for (const Rational& c : P.coefficients()) {
    const BigInt d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

namespace {

bool divides_lcm(const MonicPoly& P, std::uint64_t p) {
  const BigInt l = lcm_denominators(P);
  const BigInt pp = from_u64(p);
  return mpz_divisible_p(l.get_mpz_t(), pp.get_mpz_t()) != 0;
}

}  // namespace

FpPoly reduce_poly_mod_p(const MonicPoly& P, std::uint64_t p) {
  if (divides_lcm(P, p)) {
    throw Error(Errc::BadPrime, std::to_string(p) + " divides a coefficient denominator of " + P.to_string());
  }
  FpPoly out{p, {}};
  out.c.reserve(P.coefficients().size());
  for (const Rational& c : P.coefficients()) out.c.push_back(reduce_mod_p(c, p));
  out.trim();
  return out;
}

std::optional<SplitReport> splits_over_fp(const MonicPoly& P, std::uint64_t p) {
  auto roots = fp_split_roots(reduce_poly_mod_p(P, p));
  if (!roots) return std::nullopt;
  std::sort(roots->begin(), roots->end());
  return SplitReport{p, std::move(*roots)};
}

std::vector<std::uint64_t> splitting_primes(const std::vector<MonicPoly>& polys, std::size_t count,
                                            const PrimeSet& skip, std::uint64_t ceiling) {
  for (const MonicPoly& f : polys) {
    if (f.constant_term().is_zero()) {
      throw Error(Errc::ZeroConstantTerm, "polynomial " + f.to_string() + " vanishes at 0");
    }
  }
  std::vector<std::uint64_t> found;
  for (std::uint64_t p = 2; found.size() < count; p = next_prime(p)) {
    if (p > ceiling) {
      throw Error(Errc::SearchCeilingExceeded,
                  "found " + std::to_string(found.size()) + " of " + std::to_string(count) +
                      " splitting primes below " + std::to_string(ceiling));
    }
    if (skip.contains(p)) continue;
    const bool ok = std::all_of(polys.begin(), polys.end(), [p](const MonicPoly& f) {
      if (divides_lcm(f, p)) return false;
      const FpPoly r = reduce_poly_mod_p(f, p);
      return !r.c.empty() && r.c[0] != 0 && fp_splits(r);
    });
    if (ok) found.push_back(p);
  }
  return found;
}

std::uint64_t lambda_order(const MonicPoly& P, std::uint64_t p) {
  const auto report = splits_over_fp(P, p);
  if (!report) throw Error(Errc::NotSplit, P.to_string() + " does not split over F_" + std::to_string(p));
  std::uint64_t l = 1;
  std::uint64_t prev = p;  // sentinel; roots are < p
  for (std::uint64_t r : report->roots) {
    if (r == prev) continue;
    prev = r;
    if (r == 0) throw Error(Errc::NotSplit, P.to_string() + " has a zero root mod " + std::to_string(p));
    l = lcm_u64(l, order_mod_prime(r, p));
  }
  return l;
}

MonicPoly cyclotomic(std::uint64_t d) {
  if (d == 0) throw Error(Errc::InvalidArgument, "cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<std::uint64_t, MonicPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(d); it != memo.end()) return it->second;
  }
  Poly acc = Poly::monomial(1, d) - Poly::constant(1);
  for (std::uint64_t e = 1; e < d; ++e) {
    if (d % e == 0) acc = acc.divmod(cyclotomic(e).poly()).first;
  }
  MonicPoly out(std::move(acc));
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(d, std::move(out)).first->second;
}

bool all_roots_roots_of_unity(const MonicPoly& P) {
  if (!P.poly().has_integer_coefficients()) return false;
  Poly rest = P.poly();
  const std::uint64_t deg = P.degree();
  const std::uint64_t limit = 2 * deg * deg;
  for (std::uint64_t d = 1; d <= limit && rest.degree() > 0; ++d) {
    if (euler_phi(d) > static_cast<std::uint64_t>(rest.degree())) continue;
    const Poly phi = cyclotomic(d).poly();
    for (;;) {
      auto [q, r] = rest.divmod(phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      if (rest.degree() < phi.degree()) break;
    }
  }
  return rest == Poly::constant(1);
}

}  // namespace flatq
