// SPDX-License-Identifier: MIT
#include "illpose/multiplier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "illpose/gallery.hpp"

namespace illpose {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stabilized if the sup stopped moving between the last two levels,
// unbounded if it grew by an order of magnitude overall (or overflowed).
DirectionBound classify_direction(const std::vector<double>& sups) {
  if (sups.empty()) return DirectionBound::Inconclusive;
  for (double s : sups)
    if (std::isinf(s)) return DirectionBound::Unbounded;
  double first = sups.front(), last = sups.back();
  if (first > 0.0 && last / first >= 10.0) return DirectionBound::Unbounded;
  if (sups.size() >= 2) {
    double prev = sups[sups.size() - 2];
    if (prev > 0.0 && last / prev < 2.0) return DirectionBound::Bounded;
  } else {
    return DirectionBound::Bounded;
  }
  return DirectionBound::Inconclusive;
}

std::vector<double> quotient_nodes(const GridSpec& grid, MeasureKind kind, int level) {
  int n = grid.n_points;
  std::vector<double> t(n);
  if (kind == MeasureKind::FiniteMeasureUnitInterval) {
    // log-spaced nodes reaching down to 10^{-1-level}, endpoint t=1 included
    double lo = std::log(std::pow(10.0, -1.0 - level));
    for (int i = 0; i < n; ++i) t[i] = std::exp(lo + (0.0 - lo) * i / (n - 1));
  } else {
    // uniform nodes on [0, T*10^level], left endpoint included
    double T = (grid.truncation > 0.0 ? grid.truncation : 10.0) * std::pow(10.0, level);
    for (int i = 0; i < n; ++i) t[i] = T * i / (n - 1);
  }
  return t;
}

void check_monotonicity(const MultiplierSpec& f, const std::vector<double>& t) {
  if (f.monotonicity == Monotonicity::None) return;
  for (size_t i = 1; i < t.size(); ++i) {
    double a = f.eval(t[i - 1]), b = f.eval(t[i]);
    bool ok = (f.monotonicity == Monotonicity::IncreasingFromZero) ? (b >= a) : (b <= a);
    if (!ok)
      throw std::invalid_argument("multiplier '" + f.name +
                                  "' violates its declared monotonicity on the grid");
  }
}

}  // namespace

MultiplierSpec make_multiplier(const std::string& name) {
  auto colon = name.find(':');
  std::string stem = (colon == std::string::npos) ? name : name.substr(0, colon);
  double p = (colon == std::string::npos) ? 1.0 : std::stod(name.substr(colon + 1));

  MultiplierSpec f;
  f.name = name;
  if (stem == "linear") {
    if (!(p > 0.0)) throw std::invalid_argument("linear multiplier needs c > 0");
    f.eval = [p](double t) { return p * t; };
    f.monotonicity = Monotonicity::IncreasingFromZero;
  } else if (stem == "power") {
    if (!(p > 0.0)) throw std::invalid_argument("power multiplier needs kappa > 0");
    f.eval = [p](double t) { return std::pow(t, p); };
    f.monotonicity = Monotonicity::IncreasingFromZero;
  } else if (stem == "exp-inv") {
    if (!(p > 0.0)) throw std::invalid_argument("exp-inv multiplier needs kappa > 0");
    f.eval = [p](double t) { return t > 0.0 ? std::exp(-1.0 / std::pow(t, p)) : 0.0; };
    f.monotonicity = Monotonicity::IncreasingFromZero;
  } else if (stem == "inv-poly") {
    if (!(p > 0.0)) throw std::invalid_argument("inv-poly multiplier needs p > 0");
    f.eval = [p](double t) { return std::pow(1.0 + t, -p); };
    f.domain_kind = MeasureKind::InfiniteMeasureHalfLine;
    f.monotonicity = Monotonicity::DecreasingToZero;
  } else {
    throw std::invalid_argument("unknown multiplier '" + name +
                                "'; forms: linear:c power:kappa exp-inv:kappa inv-poly:p");
  }
  return f;
}

QuotientReport quotient_verdict(const MultiplierSpec& f_prime, const MultiplierSpec& f,
                                const GridSpec& grid, const std::vector<int>& refinement_levels) {
  if (f_prime.domain_kind != f.domain_kind)
    throw std::invalid_argument("multiplier pair must share a domain kind");
  if (refinement_levels.empty()) throw std::invalid_argument("need at least one refinement level");
  if (grid.n_points < 2) throw std::invalid_argument("quotient grid needs n_points >= 2");

  QuotientReport rep;
  for (int level : refinement_levels) {
    std::vector<double> t = quotient_nodes(grid, f.domain_kind, level);
    check_monotonicity(f, t);
    check_monotonicity(f_prime, t);
    double sup_f = 0.0, sup_b = 0.0;
    for (double node : t) {
      double a = f.eval(node), b = f_prime.eval(node);
      // The half-line grids include t=0 where decreasing multipliers are
      // positive; elsewhere an exact zero means the grid hit an essential
      // zero, which the caller must avoid.
      if (a == 0.0 && b == 0.0) continue;
      if (a == 0.0 || b == 0.0) {
        bool fwd_inf = (a == 0.0);
        if (fwd_inf)
          sup_f = kInf;
        else
          sup_b = kInf;
        continue;
      }
      if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("quotient grid hit a zero or negative multiplier value");
      sup_f = std::max(sup_f, b / a);
      sup_b = std::max(sup_b, a / b);
    }
    rep.forward_sups.push_back(sup_f);
    rep.backward_sups.push_back(sup_b);
  }

  rep.sup_ratio = rep.forward_sups.back();
  rep.both_directions = {rep.forward_sups.back(), rep.backward_sups.back()};
  {
    // report the node attaining the finest-level forward sup
    std::vector<double> t = quotient_nodes(grid, f.domain_kind, refinement_levels.back());
    double best = -1.0;
    for (double node : t) {
      double a = f.eval(node), b = f_prime.eval(node);
      if (a > 0.0 && b / a > best) {
        best = b / a;
        rep.attained_near = node;
      }
    }
  }

  rep.forward = classify_direction(rep.forward_sups);
  rep.backward = classify_direction(rep.backward_sups);
  if (rep.forward == DirectionBound::Bounded && rep.backward == DirectionBound::Bounded)
    rep.verdict = Relation::Equivalent;
  else if (rep.forward == DirectionBound::Bounded && rep.backward == DirectionBound::Unbounded)
    rep.verdict = Relation::StrictlyMoreIllPosed;
  else
    rep.verdict = Relation::Undecided;
  return rep;
}

SelfadjointPair build_selfadjoint_pair(const MultiplierSpec& f_prime, const MultiplierSpec& f,
                                       const GridSpec& grid) {
  OperatorMatrix H = build_multiplication(f, grid);
  OperatorMatrix Hp = build_multiplication(f_prime, grid);
  int N = grid.n_points;
  Matrix S = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    double a = H.entries(i, i), b = Hp.entries(i, i);
    if (!(a > 0.0))
      throw std::invalid_argument("forward quotient unbounded on this grid: f vanishes at a node");
    S(i, i) = b / a;
  }
  SelfadjointPair pair;
  pair.residual = (Hp.entries - H.entries * S).cwiseAbs().maxCoeff();
  pair.H = std::move(H);
  pair.H_prime = std::move(Hp);
  pair.S = {std::move(S), grid, "S:" + f_prime.name + "/" + f.name, OperatorKind::NoncompactModel};
  pair.R = Matrix::Identity(N, N);
  return pair;
}

}  // namespace illpose
