// SPDX-License-Identifier: MIT
#include "illpose/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace illpose {

namespace {

constexpr double kPencilCutoffRel = 1e-12;
constexpr double kDouglasBoundedFactor = 4.0;
constexpr double kDouglasDivergeFactor = 10.0;
constexpr double kCodimLowerMin = 0.01;
constexpr double kRateThetaTol = 0.25;
constexpr double kRateLogTol = 0.25;

// || M ||_2 for symmetric M by power iteration with a fixed start vector.
double sym_norm_power_iteration(const Matrix& M) {
  Eigen::Index n = M.rows();
  Vector x = Vector::Constant(n, 1.0 / std::sqrt(double(n)));
  double lambda = 0.0;
  for (int it = 0; it < 80; ++it) {
    Vector y = M * x;
    double ny = y.norm();
    if (ny == 0.0) return 0.0;
    x = y / ny;
    lambda = ny;
  }
  return lambda;
}

double spectral_norm(const Matrix& M, const std::string& label) {
  if (std::max(M.rows(), M.cols()) >= 2048) {
    // power iteration on the Gram matrix keeps the big witness checks cheap
    Matrix G = M.transpose() * M;
    return std::sqrt(std::max(0.0, sym_norm_power_iteration(G)));
  }
  return operator_norm(M, label);
}

// || R^T R - I || without forming the Gram matrix at large sizes
double gram_defect_norm(const Matrix& R) {
  if (R.cols() <= 1024) {
    Matrix g = R.transpose() * R;
    g.diagonal().array() -= 1.0;
    return operator_norm(g, "witness-orthogonality");
  }
  Eigen::Index n = R.cols();
  Vector x = Vector::Constant(n, 1.0 / std::sqrt(double(n)));
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vector y = R.transpose() * (R * x) - x;
    lambda = y.norm();
    if (lambda == 0.0) return 0.0;
    x = y / lambda;
  }
  return lambda;
}

}  // namespace

SvdTriple kron_square_svd(const SvdTriple& base) {
  const Eigen::Index m = base.U.rows();
  const Eigen::Index n = base.V.rows();
  const Eigen::Index r = base.s.size();
  const Eigen::Index nn = r * r;

  std::vector<std::pair<double, std::pair<int, int>>> prods;
  prods.reserve(nn);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) prods.push_back({base.s(i) * base.s(j), {i, j}});
  std::stable_sort(prods.begin(), prods.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  SvdTriple out;
  out.s = Vector(nn);
  out.U = Matrix(m * m, nn);
  out.V = Matrix(n * n, nn);
  for (Eigen::Index k = 0; k < nn; ++k) {
    out.s(k) = prods[k].first;
    int i = prods[k].second.first, j = prods[k].second.second;
    // kron(B,B) maps vec(X) to vec(B X B^T); its singular vectors are
    // kron(u_i, u_j) with the same stacking convention
    for (Eigen::Index a = 0; a < m; ++a)
      out.U.block(a * m, k, m, 1) = base.U(a, i) * base.U.col(j);
    for (Eigen::Index a = 0; a < n; ++a)
      out.V.block(a * n, k, n, 1) = base.V(a, i) * base.V.col(j);
  }
  return out;
}

SvdTriple sorted_diagonal_svd(const Matrix& D) {
  Eigen::Index n = std::min(D.rows(), D.cols());
  for (Eigen::Index i = 1; i < n; ++i)
    if (D(i, i) > D(i - 1, i - 1))
      throw std::invalid_argument("sorted_diagonal_svd needs a non-increasing diagonal");
  SvdTriple out;
  out.U = Matrix::Identity(D.rows(), D.rows());
  out.V = Matrix::Identity(D.cols(), D.cols());
  out.s = D.diagonal().head(n);
  return out;
}

double witness_residual_on(const Matrix& A_prime, const Matrix& A, const Matrix& R,
                           const Matrix& S, const Matrix& restrict_cols) {
  Matrix D = A_prime * restrict_cols - R * (A * (S * restrict_cols));
  return spectral_norm(D, "witness-residual");
}

FactorizationWitness build_witness_from_svds(const SvdTriple& sp, const SvdTriple& sa, int rank,
                                             const Matrix& A_prime, const Matrix& A) {
  if (rank < 1) throw std::invalid_argument("witness rank must be >= 1");
  if (rank > sp.s.size() || rank > sa.s.size())
    throw std::invalid_argument("witness rank exceeds available singular values");
  if (sp.U.rows() < sa.U.rows())
    throw std::invalid_argument("witness needs range dim of A' >= range dim of A");
  for (int i = 0; i < rank; ++i)
    if (!(sa.s(i) > 0.0))
      throw std::invalid_argument("vanishing singular value of A inside the witness rank");

  FactorizationWitness w;
  w.rank = rank;
  w.sigma = Vector(rank);
  for (int i = 0; i < rank; ++i) w.sigma(i) = sp.s(i) / sa.s(i);

  // identity factors come out of diagonal surrogates; skip the dead products
  const bool sa_V_id = sa.V.isIdentity(0.0);
  const bool sp_V_id = sp.V.isIdentity(0.0);
  const bool sa_U_id = sa.U.isIdentity(0.0);
  const bool sp_U_id = sp.U.isIdentity(0.0);

  // S = sum_i sigma_i u_i (u'_i)^T over the leading rank triple
  if (sa_V_id) {
    w.S = Matrix::Zero(sa.V.rows(), sp.V.rows());
    w.S.topRows(rank) = w.sigma.asDiagonal() * sp.V.leftCols(rank).transpose();
  } else if (sp_V_id) {
    w.S = Matrix::Zero(sa.V.rows(), sp.V.rows());
    w.S.leftCols(rank) = sa.V.leftCols(rank) * w.sigma.asDiagonal();
  } else {
    w.S = sa.V.leftCols(rank) * (w.sigma.asDiagonal() * sp.V.leftCols(rank).transpose());
  }

  // R pairs the left bases wholesale, which completes the partial isometry
  const Eigen::Index m = sa.U.cols();
  if (sa_U_id)
    w.R = sp.U.leftCols(m);
  else if (sp_U_id && sp.U.rows() == m)
    w.R = sa.U.transpose();
  else
    w.R = sp.U.leftCols(m) * sa.U.transpose();

  w.orthogonality_defect = gram_defect_norm(w.R);
  w.residual = witness_residual_on(A_prime, A, w.R, w.S, sp.V.leftCols(rank));
  return w;
}

FactorizationWitness build_witness(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                                   int rank) {
  if (rank > std::min(A_prime.rows(), A_prime.cols()) ||
      rank > std::min(A.rows(), A.cols()))
    throw std::invalid_argument("witness rank exceeds matrix dimensions");
  SvdTriple sp = full_svd(A_prime.entries, A_prime.label);
  SvdTriple sa = full_svd(A.entries, A.label);
  return build_witness_from_svds(sp, sa, rank, A_prime.entries, A.entries);
}

PolarDecomposition polar_absolute(const OperatorMatrix& A) {
  if (A.rows() < A.cols())
    throw std::invalid_argument("polar decomposition expects a square or tall matrix");
  SvdTriple svd = full_svd(A.entries, A.label);
  Eigen::Index n = A.cols();
  PolarDecomposition p;
  p.abs_A.entries = svd.V * svd.s.asDiagonal() * svd.V.transpose();
  p.abs_A.grid = A.grid;
  p.abs_A.label = "|" + A.label + "|";
  p.abs_A.kind = A.kind;
  p.U = svd.U.leftCols(n) * svd.V.transpose();
  return p;
}

double douglas_constant_at(const OperatorMatrix& A_prime, const OperatorMatrix& A,
                           const std::optional<Matrix>& R) {
  if (R && (R->rows() != A.rows() || R->cols() != A_prime.rows()))
    throw std::invalid_argument("douglas R has incompatible dimensions");
  SvdTriple svd = full_svd(A.entries, A.label);
  double cutoff = kPencilCutoffRel * (svd.s.size() ? svd.s(0) : 0.0);
  int r = 0;
  while (r < svd.s.size() && svd.s(r) > cutoff) ++r;
  if (r == 0) throw std::invalid_argument("degenerate pencil: A^T is numerically zero");

  // y = U_r w parametrizes the numerical range of A^T; the constant is the
  // largest singular value of Sigma_r^{-1} U_r^T R^T A'.
  Matrix right = R ? Matrix(R->transpose() * A_prime.entries) : A_prime.entries;
  Matrix M = svd.s.head(r).cwiseInverse().asDiagonal() *
             (svd.U.leftCols(r).transpose() * right);
  return operator_norm(M, "douglas-pencil");
}

DouglasEstimate douglas_constant(const std::function<OperatorMatrix(int)>& build_A_prime,
                                 const std::function<OperatorMatrix(int)>& build_A,
                                 const std::vector<int>& levels,
                                 const std::optional<Matrix>& R) {
  if (levels.empty()) throw std::invalid_argument("douglas sweep needs at least one level");
  DouglasEstimate est;
  est.levels = levels;
  for (int N : levels)
    est.constants.push_back(douglas_constant_at(build_A_prime(N), build_A(N), R));

  double mx = *std::max_element(est.constants.begin(), est.constants.end());
  double mn = *std::min_element(est.constants.begin(), est.constants.end());
  bool increasing = true;
  for (size_t i = 1; i < est.constants.size(); ++i)
    if (est.constants[i] <= est.constants[i - 1]) increasing = false;

  if (mn > 0.0 && mx / mn < kDouglasBoundedFactor)
    est.classification = DouglasClass::Bounded;
  else if (increasing && est.constants.front() > 0.0 &&
           est.constants.back() / est.constants.front() > kDouglasDivergeFactor)
    est.classification = DouglasClass::Diverging;
  else
    est.classification = DouglasClass::Inconclusive;
  return est;
}

CodimReport codim_lemma_check(const OperatorMatrix& A, int m, IndexRange window) {
  Vector s = singular_values(A.entries, A.label);
  int len = static_cast<int>(s.size());
  if (window.lo < 1 || 2 * window.hi > len)
    throw std::invalid_argument("codim window needs 2*hi <= spectrum length");
  if (m < 1 || m >= std::min(A.rows(), A.cols()))
    throw std::invalid_argument("codim order m must satisfy 1 <= m < matrix dimension");

  SvdTriple svd = full_svd(A.entries, A.label);
  Matrix Q = Matrix::Identity(A.rows(), A.rows()) -
             svd.U.leftCols(m) * svd.U.leftCols(m).transpose();
  Vector sq = singular_values(Matrix(Q * A.entries), "Q*" + A.label);

  CodimReport rep;
  rep.c_lower = std::numeric_limits<double>::infinity();
  double ratio_min = std::numeric_limits<double>::infinity(), ratio_max = 0.0;
  bool sandwich = true;
  const double slack = 1.0 + 1e-10;
  for (int n = window.lo; n <= window.hi; ++n) {
    double s_n = s(n - 1), s_2n = s(2 * n - 1), s_qn = sq(n - 1);
    if (!(s_n > 0.0)) throw std::invalid_argument("codim window hit a zero singular value");
    rep.c_lower = std::min(rep.c_lower, s_2n / s_n);
    double ratio = s_qn / s_n;
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    if (n >= m && s_2n > s_qn * slack) sandwich = false;  // s_{2n} <= s_n(QA) for n >= m
    if (s_qn > s_n * slack) sandwich = false;             // projection contracts
  }
  rep.ratio_window = {ratio_min, ratio_max};
  rep.holds = sandwich && rep.c_lower >= kCodimLowerMin;
  return rep;
}

std::optional<CompactnessGuard> compactness_guard(OperatorKind kind_A_prime,
                                                  OperatorKind kind_A) {
  if (kind_A_prime == kind_A) return std::nullopt;
  CompactnessGuard g;
  g.a_prime_never_below = (kind_A_prime == OperatorKind::NoncompactModel);
  g.a_never_below = (kind_A == OperatorKind::NoncompactModel);
  return g;
}

ProbeReport ratio_probe_from_spectra(
    const std::vector<std::pair<SpectrumResult, SpectrumResult>>& pairs,
    std::optional<IndexRange> window, double floor_rel) {
  if (pairs.empty()) throw std::invalid_argument("ratio probe needs a non-empty family");
  ProbeReport rep;
  for (const auto& [s_a, s_ta] : pairs) {
    int len = std::min(s_a.length(), s_ta.length());
    IndexRange w = window ? *window : IndexRange{1, std::max(4, len / 4)};
    w.hi = std::min(w.hi, len);
    double floor = floor_rel * (s_ta.length() ? s_ta.at(1) : 0.0);
    double member = 0.0;
    int member_n = 0;
    for (int n = w.lo; n <= w.hi; ++n) {
      if (!(s_ta.at(n) > floor)) {
        rep.noise_flag = true;
        member = std::numeric_limits<double>::infinity();
        member_n = n;
        break;
      }
      double r = s_a.at(n) / s_ta.at(n);
      if (r > member) {
        member = r;
        member_n = n;
      }
    }
    rep.member_max.push_back({s_ta.label, member});
    if (member > rep.max_ratio) {
      rep.max_ratio = member;
      rep.attained_label = s_ta.label;
      rep.attained_n = member_n;
    }
  }
  return rep;
}

ProbeReport left_inverse_ratio_probe(const OperatorMatrix& T,
                                     const std::vector<OperatorMatrix>& family,
                                     std::optional<IndexRange> window) {
  std::vector<std::pair<SpectrumResult, SpectrumResult>> pairs;
  for (const OperatorMatrix& A : family) {
    if (T.cols() != A.rows())
      throw std::invalid_argument("composition T*A undefined for '" + A.label + "'");
    OperatorMatrix TA;
    TA.entries = T.entries * A.entries;
    TA.grid = A.grid;
    TA.label = T.label + "*" + A.label;
    pairs.push_back({compute_spectrum(A), compute_spectrum(TA)});
  }
  return ratio_probe_from_spectra(pairs, window);
}

RateOrder classify_rate_order(const SpectrumResult& sp, const SpectrumResult& sa,
                              IndexRange window) {
  double theta_p = fit_power(sp, window).theta;
  double theta_a = fit_power(sa, window).theta;
  if (theta_p - theta_a >= kRateThetaTol) return RateOrder::AprimeFaster;
  if (theta_a - theta_p >= kRateThetaTol) return RateOrder::AprimeSlower;
  double lambda = log_ratio_order(sp, sa, window);
  if (lambda <= -kRateLogTol) return RateOrder::AprimeFaster;
  if (lambda >= kRateLogTol) return RateOrder::AprimeSlower;
  return RateOrder::Comparable;
}

OrderingVerdict pair_verdict(const SpectrumResult& sp, const SpectrumResult& sa,
                             IndexRange window,
                             std::optional<std::pair<OperatorKind, OperatorKind>> kinds) {
  SpectrumComparison fwd = compare_spectra(sp, sa, window);
  SpectrumComparison bwd = compare_spectra(sa, sp, window);

  OrderingVerdict v;
  v.relation = verdict_from_comparison(fwd, bwd);
  v.evidence.push_back("spectra");

  if (v.relation == Relation::Equivalent || v.relation == Relation::Undecided ||
      v.relation == Relation::MoreIllPosed) {
    RateOrder order = classify_rate_order(sp, sa, window);
    if (order == RateOrder::AprimeFaster) {
      v.relation = Relation::StrictlyMoreIllPosed;
      v.evidence.push_back("rate-fit");
    } else if (order == RateOrder::AprimeSlower) {
      v.relation = Relation::StrictlyMoreIllPosed;
      v.reversed = true;
      v.evidence.push_back("rate-fit");
    }
  }

  if (kinds) {
    auto guard = compactness_guard(kinds->first, kinds->second);
    if (guard) {
      v.evidence.push_back("guard_compactness");
      if (guard->a_never_below && !v.reversed) {
        // A can never precede A': an equivalence or plain ordering sharpens
        if (v.relation == Relation::MoreIllPosed || v.relation == Relation::Equivalent)
          v.relation = Relation::StrictlyMoreIllPosed;
      } else if (guard->a_prime_never_below) {
        if (v.relation == Relation::Equivalent) {
          v.relation = Relation::StrictlyMoreIllPosed;
          v.reversed = true;
        } else if (!v.reversed && (v.relation == Relation::MoreIllPosed ||
                                   v.relation == Relation::StrictlyMoreIllPosed)) {
          v.relation = Relation::Undecided;  // the claimed direction is forbidden
        }
      }
    }
  }
  return v;
}

}  // namespace illpose
