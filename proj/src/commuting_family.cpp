#include "flatq/commuting_family.hpp"

#include <algorithm>
#include <initializer_list>

#include "flatq/error.hpp"

namespace flatq {

namespace {

std::string matrix_name(std::size_t i) { return "matrix " + std::to_string(i); }

std::uint64_t prime_of(const std::vector<FpMatrix>& reduced) {
  if (reduced.empty()) throw Error(Errc::InvalidArgument, "empty matrix family");
  const std::uint64_t p = reduced.front().prime();
  const std::size_t n = reduced.front().rows();
  for (const FpMatrix& m : reduced) {
    if (!m.square() || m.rows() != n || m.prime() != p) {
      throw Error(Errc::DimensionMismatch, "reduced matrices must share dimension and prime");
    }
  }
  return p;
}

std::vector<std::uint64_t> split_roots_or_throw(const FpMatrix& m, std::size_t index) {
  auto roots = fp_split_roots(m.char_poly());
  if (!roots) {
    throw Error(Errc::NotSplit, "characteristic polynomial of " + matrix_name(index) +
                                    " does not split over F_" + std::to_string(m.prime()));
  }
  std::sort(roots->begin(), roots->end());
  return *roots;
}

FpMatrix lower_right_block(const FpMatrix& m, std::size_t k) {
  const std::size_t d = m.rows() - k;
  FpMatrix out(d, d, m.prime());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) out.at(i, j) = m.at(k + i, k + j);
  }
  return out;
}

// Extends independent columns `vs` to a basis of F_p^n with standard vectors.
FpMatrix extend_to_basis(const std::vector<FpVector>& vs, std::size_t n, std::uint64_t p) {
  std::vector<FpVector> cols = vs;
  for (std::size_t j = 0; j < n && cols.size() < n; ++j) {
    FpVector e(n, 0);
    e[j] = 1;
    cols.push_back(e);
    if (span_rank(cols, n, p) < cols.size()) cols.pop_back();
  }
  if (cols.size() != n) throw Error(Errc::Internal, "basis extension failed");
  return FpMatrix::from_columns(cols, n, p);
}

}  // namespace

CommutingFamily validate_family(const std::vector<QMatrix>& matrices) {
  if (matrices.empty()) throw Error(Errc::DimensionMismatch, "family has no matrices");
  const std::size_t n = matrices.front().dim();
  if (n == 0) throw Error(Errc::DimensionMismatch, "matrices must have dimension >= 1");
  CommutingFamily fam;
  fam.n = n;
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    if (matrices[i].dim() != n) {
      throw Error(Errc::DimensionMismatch, matrix_name(i) + " has dimension " +
                                               std::to_string(matrices[i].dim()) + ", expected " +
                                               std::to_string(n));
    }
    if (matrices[i].determinant().is_zero()) throw Error(Errc::Singular, matrix_name(i) + " is singular");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    for (std::size_t j = i + 1; j < matrices.size(); ++j) {
      if (!(matrices[i] * matrices[j] == matrices[j] * matrices[i])) {
        throw Error(Errc::NotCommuting, matrix_name(i) + " and " + matrix_name(j) + " do not commute");
      }
    }
  }
  fam.matrices = matrices;
  PrimeSet D;
  for (const QMatrix& m : matrices) {
    fam.inverses.push_back(m.inverse());
    for (const QMatrix* x : std::initializer_list<const QMatrix*>{&m, &fam.inverses.back()}) {
      for (const Rational& q : x->entries()) D = D.united(denominator_support(q));
    }
  }
  fam.D = std::move(D);
  return fam;
}

bool finitely_generated_criterion(const CommutingFamily& fam) {
  for (std::size_t i = 0; i < fam.matrices.size(); ++i) {
    if (!char_poly(fam.matrices[i]).poly().has_integer_coefficients()) return false;
    if (!char_poly(fam.inverses[i]).poly().has_integer_coefficients()) return false;
  }
  return true;
}

std::vector<FpMatrix> reduce_K_mod_p(const CommutingFamily& fam, std::uint64_t p) {
  if (!is_prime(p)) throw Error(Errc::BadPrime, std::to_string(p) + " is not prime");
  if (fam.D.contains(p)) {
    throw Error(Errc::BadPrime, std::to_string(p) + " lies in the prime support D = " + fam.D.to_string());
  }
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < fam.matrices.size(); ++i) {
    FpMatrix r = fam.matrices[i].reduce_mod(p);
    if (r.rank() != fam.n) throw Error(Errc::BadPrime, matrix_name(i) + " is singular mod " + std::to_string(p));
    out.push_back(std::move(r));
  }
  return out;
}

SimultaneousEigen simultaneous_eigenvector(const std::vector<FpMatrix>& reduced,
                                           std::optional<std::uint64_t> first) {
  const std::uint64_t p = prime_of(reduced);
  const std::size_t n = reduced.front().rows();
  for (std::size_t i = 0; i < reduced.size(); ++i) split_roots_or_throw(reduced[i], i);

  FpMatrix W = FpMatrix::identity(n, p);
  SimultaneousEigen out;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    // W spans a subspace invariant under every matrix; restrict M_i to it.
    const FpMatrix C = solve_in_span(W, reduced[i] * W);
    std::uint64_t mu = 0;
    if (i == 0 && first) {
      mu = *first % p;
      if (C.minus_scalar(mu).rank() == C.rows()) {
        throw Error(Errc::BadOrder, std::to_string(mu) + " is not an eigenvalue of " + matrix_name(0));
      }
    } else {
      auto roots = fp_split_roots(C.char_poly());
      if (!roots || roots->empty()) throw Error(Errc::NotSplit, "restricted map has no eigenvalue");
      mu = *std::min_element(roots->begin(), roots->end());
    }
    const std::vector<FpVector> ys = C.minus_scalar(mu).nullspace();
    W = W * FpMatrix::from_columns(ys, C.rows(), p);
    out.eigenvalues.push_back(mu);
  }
  out.vector = W.column(0);
  return out;
}

bool TriangularizationCert::validates(const std::vector<FpMatrix>& reduced) const {
  if (reduced.size() != triangular_forms.size()) return false;
  FpMatrix inv;
  try {
    inv = basis.inverse();
  } catch (const Error&) {
    return false;
  }
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    if (!(inv * reduced[i] * basis == triangular_forms[i])) return false;
    if (!triangular_forms[i].is_upper_triangular()) return false;
  }
  if (triangular_forms.empty()) return true;
  const FpMatrix& t0 = triangular_forms.front();
  if (diagonal_of_first.size() != t0.rows()) return false;
  for (std::size_t k = 0; k < t0.rows(); ++k) {
    if (t0.at(k, k) != diagonal_of_first[k]) return false;
  }
  return true;
}

TriangularizationCert simultaneous_triangularize(const std::vector<FpMatrix>& reduced,
                                                 const std::vector<std::uint64_t>& order) {
  const std::uint64_t p = prime_of(reduced);
  const std::size_t n = reduced.front().rows();
  std::vector<std::uint64_t> roots1;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    auto r = split_roots_or_throw(reduced[i], i);
    if (i == 0) roots1 = std::move(r);
  }
  std::vector<std::uint64_t> sorted_order = order;
  for (auto& x : sorted_order) x %= p;
  std::sort(sorted_order.begin(), sorted_order.end());
  if (sorted_order != roots1) {
    throw Error(Errc::BadOrder, "prescribed diagonal is not a permutation of the eigenvalues of matrix 0");
  }

  std::vector<FpVector> chosen;
  for (std::size_t k = 0; k < n; ++k) {
    const FpMatrix B = extend_to_basis(chosen, n, p);
    const FpMatrix Binv = B.inverse();
    std::vector<FpMatrix> quotient_maps;
    for (const FpMatrix& m : reduced) quotient_maps.push_back(lower_right_block(Binv * m * B, k));
    const SimultaneousEigen eig = simultaneous_eigenvector(quotient_maps, order[k] % p);
    FpVector v(n, 0);
    for (std::size_t j = 0; j < eig.vector.size(); ++j) {
      if (eig.vector[j] == 0) continue;
      for (std::size_t i = 0; i < n; ++i) v[i] = add_mod(v[i], mul_mod(eig.vector[j], B.at(i, k + j), p), p);
    }
    chosen.push_back(std::move(v));
  }

  TriangularizationCert cert;
  cert.p = p;
  cert.basis = FpMatrix::from_columns(chosen, n, p);
  const FpMatrix inv = cert.basis.inverse();
  for (const FpMatrix& m : reduced) cert.triangular_forms.push_back(inv * m * cert.basis);
  for (std::uint64_t x : order) cert.diagonal_of_first.push_back(x % p);
  if (!cert.validates(reduced)) throw Error(Errc::Internal, "triangularization certificate failed to validate");
  return cert;
}

IndexPSubgroup index_p_subgroup(const CommutingFamily& fam, std::uint64_t p, ExponentPolicy policy) {
  const std::vector<FpMatrix> reduced = reduce_K_mod_p(fam, p);
  std::vector<std::uint64_t> roots1;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    auto r = split_roots_or_throw(reduced[i], i);
    if (i == 0) roots1 = std::move(r);
  }

  // Largest multiplicative order, ties broken by the smallest residue.
  std::uint64_t lambda = roots1.front();
  std::uint64_t best = order_mod_prime(lambda, p);
  for (std::uint64_t root : roots1) {
    const std::uint64_t o = order_mod_prime(root, p);
    if (o > best) {
      best = o;
      lambda = root;
    }
  }
  std::vector<std::uint64_t> order = roots1;
  order.erase(std::find(order.begin(), order.end(), lambda));
  order.push_back(lambda);

  const TriangularizationCert cert = simultaneous_triangularize(reduced, order);
  const std::size_t n = fam.n;
  IndexPSubgroup out;
  out.p = p;
  out.lambda = lambda;
  out.basis = cert.basis;
  for (std::size_t j = 0; j + 1 < n; ++j) out.hyperplane_basis.push_back(cert.basis.column(j));
  out.quotient_functional = cert.basis.inverse().row(n - 1);
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const std::uint64_t scalar = cert.triangular_forms[i].at(n - 1, n - 1);
    out.induced_scalars.push_back(scalar);
    if (i == 0) {
      out.r.push_back(best);
    } else {
      out.r.push_back(policy == ExponentPolicy::Fermat ? p - 1 : order_mod_prime(scalar, p));
    }
  }
  return out;
}

std::optional<std::size_t> nilpotency_class_bound(const CommutingFamily& fam) {
  const std::size_t n = fam.n;
  Poly unipotent = Poly::constant(1);
  const Poly x_minus_one(std::vector<Rational>{Rational(-1), Rational(1)});
  for (std::size_t i = 0; i < n; ++i) unipotent = unipotent * x_minus_one;
  for (const QMatrix& m : fam.matrices) {
    if (!(char_poly(m).poly() == unipotent)) return std::nullopt;
  }
  std::vector<QMatrix> nilpotent;
  for (const QMatrix& m : fam.matrices) nilpotent.push_back(m - QMatrix::identity(n));

  // V_c is the span of the images of all length-c products; it vanishes exactly
  // when every such product is zero.
  std::vector<QVector> span;
  for (std::size_t j = 0; j < n; ++j) {
    QVector e(n);
    e[j] = 1;
    span.push_back(std::move(e));
  }
  for (std::size_t c = 1; c <= n + 1; ++c) {
    std::vector<QVector> images;
    for (const QMatrix& N : nilpotent) {
      for (const QVector& v : span) images.push_back(N * v);
    }
    span = span_basis(images);
    if (span.empty()) return c;
  }
  throw Error(Errc::Internal, "unipotent family did not become nilpotent within n steps");
}

bool virtual_nilpotency_decision(const CommutingFamily& fam) {
  return std::all_of(fam.matrices.begin(), fam.matrices.end(),
                     [](const QMatrix& m) { return all_roots_roots_of_unity(char_poly(m)); });
}

}  // namespace flatq
