// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_TYPES_HPP
#define ILLPOSE_TYPES_HPP

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace illpose {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a dense factorization (SVD, eigensolver) does not converge.
/// Carries the label of the operator that triggered the failure.
class NumericalFailure : public std::runtime_error {
public:
  NumericalFailure(const std::string& label, const std::string& what)
      : std::runtime_error("numerical failure [" + label + "]: " + what),
        label_(label) {}
  const std::string& label() const { return label_; }

private:
  std::string label_;
};

/// 1-based inclusive index range into a spectrum.
struct IndexRange {
  int lo = 1;
  int hi = 1;

  int length() const { return hi - lo + 1; }
  bool operator==(const IndexRange& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const IndexRange& o) const { return !(*this == o); }
};

/// Default comparison window: clear of the leading constants and of the
/// discretization-dominated tail.
inline IndexRange default_window(int spectrum_length) {
  int lo = std::max(4, spectrum_length / 32);
  int hi = std::max(lo + 7, spectrum_length / 4);
  return {lo, std::min(hi, spectrum_length)};
}

enum class Domain { UnitInterval, UnitSquare, HalfLineTruncated };
enum class Scheme { MidpointCollocation, LegendreBasis, DiagonalSurrogate };
enum class OperatorKind { CompactModel, NoncompactModel };

struct GridSpec {
  int n_points = 1;
  Domain domain = Domain::UnitInterval;
  Scheme scheme = Scheme::MidpointCollocation;
  double truncation = 0.0;  // endpoint T, half-line grids only

  static GridSpec unit_interval(int n, Scheme s = Scheme::MidpointCollocation) {
    if (n < 1) throw std::invalid_argument("grid needs n_points >= 1");
    return {n, Domain::UnitInterval, s, 0.0};
  }
  static GridSpec unit_square(int n, Scheme s = Scheme::MidpointCollocation) {
    if (n < 1) throw std::invalid_argument("grid needs n_points >= 1");
    return {n, Domain::UnitSquare, s, 0.0};
  }
  static GridSpec half_line(int n, double T) {
    if (n < 1) throw std::invalid_argument("grid needs n_points >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("half-line grid needs T > 0");
    return {n, Domain::HalfLineTruncated, Scheme::MidpointCollocation, T};
  }
};

/// Dense discretization of a gallery operator. Rows index the range side,
/// columns the domain side.
struct OperatorMatrix {
  Matrix entries;
  GridSpec grid;
  std::string label;
  OperatorKind kind = OperatorKind::CompactModel;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

enum class Relation {
  MoreIllPosed,
  StrictlyMoreIllPosed,
  Equivalent,
  Incomparable,
  Undecided,
};

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::MoreIllPosed: return "MoreIllPosed";
    case Relation::StrictlyMoreIllPosed: return "StrictlyMoreIllPosed";
    case Relation::Equivalent: return "Equivalent";
    case Relation::Incomparable: return "Incomparable";
    case Relation::Undecided: return "Undecided";
  }
  return "Undecided";
}

}  // namespace illpose

#endif
