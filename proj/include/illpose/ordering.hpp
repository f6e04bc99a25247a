// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_ORDERING_HPP
#define ILLPOSE_ORDERING_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "illpose/spectrum.hpp"
#include "illpose/svd.hpp"
#include "illpose/types.hpp"

namespace illpose {

/// Explicit factorization pair (R, S) with certificates. R maps the range
/// side of A into the range side of A'; S maps the domain of A' into the
/// domain of A. The residual is the operator norm of (A' - R A S) restricted
/// to the span of the leading right singular vectors of A'.
struct FactorizationWitness {
  Matrix R;
  Matrix S;
  Vector sigma;                      // s_i(A') / s_i(A), i <= rank
  double residual = 0.0;
  double orthogonality_defect = 0.0; // || R^T R - I ||
  int rank = 0;
};

/// Builds the factorization witness from the two SVDs; the certificates are
/// measured against the matrices, not inferred from the construction.
FactorizationWitness build_witness(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                                   int rank);

/// Same construction from precomputed SVD triples (used when the SVDs come
/// from structure: diagonal surrogates, Kronecker squares).
FactorizationWitness build_witness_from_svds(const SvdTriple& svd_prime, const SvdTriple& svd_a,
                                             int rank, const Matrix& A_prime, const Matrix& A);

/// Exact SVD of the Kronecker square kron(B, B) assembled from the SVD of B:
/// values are sorted products, vectors are Kronecker products of the base
/// columns.
SvdTriple kron_square_svd(const SvdTriple& base);

/// SVD triple of a non-negative diagonal matrix whose diagonal is already
/// sorted non-increasing (identity factors).
SvdTriple sorted_diagonal_svd(const Matrix& D);

/// Operator norm of (A' - R A S) restricted to the given column block.
double witness_residual_on(const Matrix& A_prime, const Matrix& A, const Matrix& R,
                           const Matrix& S, const Matrix& restrict_cols);

/// Polar decomposition A = U |A| with |A| = (A^T A)^{1/2}.
struct PolarDecomposition {
  OperatorMatrix abs_A;
  Matrix U;
};
PolarDecomposition polar_absolute(const OperatorMatrix& A);

enum class DouglasClass { Bounded, Diverging, Inconclusive };

inline const char* to_string(DouglasClass c) {
  switch (c) {
    case DouglasClass::Bounded: return "bounded";
    case DouglasClass::Diverging: return "diverging";
    case DouglasClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Level sweep of the range-inclusion constant C(N) = sup ||A'^T R y|| / ||A^T y||.
struct DouglasEstimate {
  std::vector<int> levels;
  std::vector<double> constants;
  DouglasClass classification = DouglasClass::Inconclusive;
};

/// C at a single level: largest generalized singular value of the pencil
/// ((A')^T R, A^T) on the numerical range of A^T (relative cutoff 1e-12 s1).
double douglas_constant_at(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                           const std::optional<Matrix>& R = std::nullopt);

DouglasEstimate douglas_constant(const std::function<OperatorMatrix(int)>& build_A_prime,
                                 const std::function<OperatorMatrix(int)>& build_A,
                                 const std::vector<int>& levels,
                                 const std::optional<Matrix>& R = std::nullopt);

/// Empirical check of the m-codimension range-restriction lemma: Q annihilates
/// the top-m left singular vectors and the windowed inequalities
/// c_lower s_n <= s_2n <= s_n(QA) <= s_n(A) are verified.
struct CodimReport {
  double c_lower = 0.0;
  bool holds = false;
  std::pair<double, double> ratio_window{0.0, 0.0};  // range of s_n(QA)/s_n(A)
};
CodimReport codim_lemma_check(const OperatorMatrix& A, int m, IndexRange window);

/// Metadata-level guard: a non-compact model is never more ill-posed than a
/// compact one.
struct CompactnessGuard {
  bool a_prime_never_below = false;  // A' noncompact vs A compact: A' cannot precede A
  bool a_never_below = false;        // A noncompact vs A' compact: A cannot precede A'
};
std::optional<CompactnessGuard> compactness_guard(OperatorKind kind_A_prime,
                                                  OperatorKind kind_A);

/// Left-inverse diagnostic: growth of sup_n s_n(A)/s_n(TA) across a family.
struct ProbeReport {
  double max_ratio = 0.0;
  std::string attained_label;
  int attained_n = 0;
  std::vector<std::pair<std::string, double>> member_max;
  bool noise_flag = false;  // set when s_n(TA) fell below the working precision
};
ProbeReport left_inverse_ratio_probe(const OperatorMatrix& T,
                                     const std::vector<OperatorMatrix>& family,
                                     std::optional<IndexRange> window = std::nullopt);

/// Same diagnostic from precomputed spectra pairs (s_A, s_TA). floor_rel is
/// the working-precision floor of the supplied spectra relative to s1(TA);
/// the default matches double-precision factorizations, extended-precision
/// spectra may pass a smaller value.
ProbeReport ratio_probe_from_spectra(
    const std::vector<std::pair<SpectrumResult, SpectrumResult>>& pairs,
    std::optional<IndexRange> window = std::nullopt, double floor_rel = 1e-12);

/// Decay-rate order of two spectra from the windowed fits: power exponents
/// first, the log-order slope as tie-break. Separates rates differing by a
/// power or by a logarithmic factor.
enum class RateOrder { AprimeFaster, AprimeSlower, Comparable };
RateOrder classify_rate_order(const SpectrumResult& s_A_prime, const SpectrumResult& s_A,
                              IndexRange window);

/// Spectra-level verdict for the ordered pair (A', A). `reversed` means the
/// stated relation holds for the swapped pair instead.
struct OrderingVerdict {
  Relation relation = Relation::Undecided;
  bool reversed = false;
  std::vector<std::string> evidence;
  std::optional<FactorizationWitness> witness;
};

OrderingVerdict pair_verdict(const SpectrumResult& s_A_prime, const SpectrumResult& s_A,
                             IndexRange window,
                             std::optional<std::pair<OperatorKind, OperatorKind>> kinds =
                                 std::nullopt);

}  // namespace illpose

#endif
