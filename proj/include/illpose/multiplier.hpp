// SPDX-License-Identifier: MIT
#ifndef ILLPOSE_MULTIPLIER_HPP
#define ILLPOSE_MULTIPLIER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "illpose/types.hpp"

namespace illpose {

enum class MeasureKind { FiniteMeasureUnitInterval, InfiniteMeasureHalfLine };
enum class Monotonicity { IncreasingFromZero, DecreasingToZero, None };

/// A non-negative multiplier function together with the measure-space side
/// information needed to compare the multiplication operators it induces.
struct MultiplierSpec {
  std::string name;
  std::function<double(double)> eval;
  MeasureKind domain_kind = MeasureKind::FiniteMeasureUnitInterval;
  Monotonicity monotonicity = Monotonicity::None;
};

/// Resolves a registered multiplier name. Supported forms:
///   linear:<c>      f(t) = c*t                 (unit interval)
///   power:<kappa>   f(t) = t^kappa             (unit interval)
///   exp-inv:<kappa> f(t) = exp(-1/t^kappa)     (unit interval)
///   inv-poly:<p>    f(t) = (1+t)^{-p}          (half line)
MultiplierSpec make_multiplier(const std::string& name);

enum class DirectionBound { Bounded, Unbounded, Inconclusive };

/// Outcome of the two-sided essential-sup comparison of a multiplier pair.
struct QuotientReport {
  double sup_ratio = 0.0;            // sup of f'/f on the finest level (+inf sentinel)
  double attained_near = 0.0;        // grid node where the forward sup was attained
  std::pair<double, double> both_directions{0.0, 0.0};  // (sup f'/f, sup f/f')
  DirectionBound forward = DirectionBound::Inconclusive;
  DirectionBound backward = DirectionBound::Inconclusive;
  Relation verdict = Relation::Undecided;
  std::vector<double> forward_sups;   // per refinement level
  std::vector<double> backward_sups;  // per refinement level
};

/// Compares two multiplication operators through the quotient f'/f.
/// Refinement levels push the grid toward the essential zero: geometrically
/// toward t=0 on the unit interval, larger truncation T on the half line.
QuotientReport quotient_verdict(const MultiplierSpec& f_prime, const MultiplierSpec& f,
                                const GridSpec& grid, const std::vector<int>& refinement_levels);

struct SelfadjointPair {
  OperatorMatrix H_prime;
  OperatorMatrix H;
  OperatorMatrix S;  // diagonal factor diag(f'/f)
  Matrix R;          // identity on the common grid
  double residual = 0.0;
};

/// Emits the explicit diagonal factorization H' = R * H * S on a common grid.
/// Requires the forward quotient to be finite on every node.
SelfadjointPair build_selfadjoint_pair(const MultiplierSpec& f_prime, const MultiplierSpec& f,
                                       const GridSpec& grid);

}  // namespace illpose

#endif
