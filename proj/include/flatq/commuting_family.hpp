#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flatq/fp_matrix.hpp"
#include "flatq/number_theory.hpp"
#include "flatq/qmatrix.hpp"

namespace flatq {

/// Pairwise commuting invertible matrices M_1..M_m in GL(n, Z_D). Together they
/// define K(M_1,...,M_m), the Z-span of all M^k v with v in Z^n, and the
/// semidirect product K x| Z^m.
struct CommutingFamily {
  std::size_t n = 0;
  std::vector<QMatrix> matrices;
  std::vector<QMatrix> inverses;
  PrimeSet D;  // prime support of the entries of every M_i and M_i^{-1}
};

/// Checks shape, pairwise commutation and invertibility, then computes D.
/// Errors: DimensionMismatch, NotCommuting (names the pair), Singular (names the matrix).
CommutingFamily validate_family(const std::vector<QMatrix>& matrices);

/// True iff chi(M_i) and chi(M_i^{-1}) have integer coefficients for every i,
/// which bounds the denominators of K and makes K finitely generated.
bool finitely_generated_criterion(const CommutingFamily& fam);

/// Entry-wise reduction mod p of each M_i. Throws BadPrime if p is in D.
std::vector<FpMatrix> reduce_K_mod_p(const CommutingFamily& fam, std::uint64_t p);

struct SimultaneousEigen {
  FpVector vector;
  std::vector<std::uint64_t> eigenvalues;  // mu_i with M_i v = mu_i v
};

/// Common eigenvector found by intersecting eigenspaces one matrix at a time.
/// If `first` is given it fixes mu_1; otherwise each mu_i is the smallest
/// available eigenvalue on the current common eigenspace. The returned vector is
/// the first vector of the row-echelon null-space basis.
SimultaneousEigen simultaneous_eigenvector(const std::vector<FpMatrix>& reduced,
                                           std::optional<std::uint64_t> first = std::nullopt);

struct TriangularizationCert {
  std::uint64_t p = 0;
  FpMatrix basis;  // columns are the new basis vectors
  std::vector<FpMatrix> triangular_forms;
  std::vector<std::uint64_t> diagonal_of_first;

  /// basis^{-1} M_i basis == triangular_forms[i], all upper triangular, prescribed diagonal.
  bool validates(const std::vector<FpMatrix>& reduced) const;
};

/// Upper-triangularizes all matrices at once, with the diagonal of the first
/// one equal to `order`. Errors: NotSplit, BadOrder.
TriangularizationCert simultaneous_triangularize(const std::vector<FpMatrix>& reduced,
                                                 const std::vector<std::uint64_t>& order);

enum class ExponentPolicy {
  Fermat,      // r_i = p - 1 for i >= 2
  ExactOrder,  // r_i = ord_p(lambda_i)
};

/// Index-p subgroup H_p of K: the preimage of the M-invariant hyperplane spanned
/// by the first n-1 triangularizing vectors.
struct IndexPSubgroup {
  std::uint64_t p = 0;
  std::uint64_t lambda = 0;                   // eigenvalue of M_1 acting on K/H_p
  std::vector<FpVector> hyperplane_basis;     // n-1 vectors
  std::vector<std::uint64_t> r;               // r_1 = ord_p(lambda), then r_2..r_m
  std::vector<std::uint64_t> induced_scalars; // lambda_i, the action of M_i on K/H_p
  FpVector quotient_functional;               // x -> last coordinate of x in `basis`
  FpMatrix basis;
};

/// Picks lambda as the eigenvalue of M_1 mod p with the largest multiplicative
/// order (ties: smallest residue) and builds H_p with lambda last on the diagonal.
IndexPSubgroup index_p_subgroup(const CommutingFamily& fam, std::uint64_t p,
                                ExponentPolicy policy = ExponentPolicy::Fermat);

/// When every chi(M_i) = (x-1)^n, the least c such that every product of c
/// factors taken from {M_i - I} vanishes; otherwise nullopt.
std::optional<std::size_t> nilpotency_class_bound(const CommutingFamily& fam);

/// True iff every eigenvalue of every M_i is a root of unity.
bool virtual_nilpotency_decision(const CommutingFamily& fam);

}  // namespace flatq
