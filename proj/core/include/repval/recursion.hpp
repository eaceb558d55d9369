#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "repval/beliefs.hpp"
#include "repval/game.hpp"

namespace repval {

/// One-stage splitting value: the cost to the uninformed player of the
/// informed player revealing according to the given distribution.
/// Exact LP: minimize sum_s w_s m_s over a column mixture y and free
/// m, subject to m_s >= (A(p_s) y)_i for every atom s and row i.
/// Zero-weight atoms are skipped; their m_s would be unconstrained.
Rational v1(const GameFamily& family, const BeliefDistribution& dist);

/// Floating-point v1 for atom beliefs that are not rational (random
/// walk positions). atom_beliefs[s] lists the coordinates of atom s.
double v1_numeric(const GameFamily& family,
                  const std::vector<std::vector<double>>& atom_beliefs,
                  const std::vector<double>& weights);

/// Value function sampled on a one-parameter grid of beliefs along a
/// segment. alphas are increasing with endpoints 0 and 1.
struct ValueGrid {
  Segment segment;
  std::vector<Rational> alphas;
  std::vector<double> values;

  /// Uniform grid with grid_size >= 2 points, values all zero.
  static ValueGrid uniform(Segment segment, std::size_t grid_size);

  std::size_t size() const { return alphas.size(); }
  Belief belief_at(std::size_t t) const { return segment.at(alphas[t]); }
};

/// One application of the grid-restricted value operator at a point of
/// the segment. Splittings are restricted to grid support, so this is
/// a lower approximation of the true operator. Solved as a single LP
/// over splitting weights; by duality its optimum equals the
/// (y, lambda, mu) program that shapley_T_grid_minform solves.
/// Throws std::invalid_argument when alpha lies outside [0, 1].
double shapley_T_grid_alpha(const GameFamily& family, const ValueGrid& f,
                            const Rational& alpha);

/// Same operator addressed by a belief; p must lie on the grid's
/// segment (exact coordinate check).
double shapley_T_grid(const GameFamily& family, const ValueGrid& f,
                      const Belief& p);

/// Reference form of the same optimum: minimize mu + lambda . p over a
/// column mixture y, free lambda, mu, subject to
/// mu + lambda . p_s >= (A(p_s) y)_i + f_s for every grid atom and
/// row. Slower (every row needs an artificial); kept for cross-checks.
double shapley_T_grid_minform(const GameFamily& family, const ValueGrid& f,
                              const Belief& p);

/// Exact-arithmetic variant of the operator for invariant checks.
/// f holds exact grid values; returns the exact LP optimum.
Rational shapley_T_grid_exact(const GameFamily& family,
                              const Segment& segment,
                              const std::vector<Rational>& alphas,
                              const RVec& f, const Rational& alpha_p);

struct StageStats {
  std::size_t lp_solves = 0;
  double max_increase = 0.0;
};

/// Lower-approximation value curve from iterating the grid operator.
/// grid_values[n] is the stage-n function on the grid; values[n] is
/// its entry at the query prior. Stage 0 is identically zero.
struct ValueCurve {
  Segment segment;
  std::vector<Rational> alphas;
  std::size_t prior_index = 0;
  std::vector<std::vector<double>> grid_values;
  std::vector<double> values;
  std::vector<StageStats> stats;
  std::size_t grid_size = 0;
  /// Grid restriction of splittings makes every reported value a lower
  /// bound of the true stage value; upper control comes from the
  /// piecewise bound or the invariant function, never from this DP.
  bool lower_bound_flag = true;
};

/// Two-state families only; the prior must be exactly on the uniform
/// grid, else throws std::invalid_argument ("grid too coarse").
ValueCurve value_curve(const GameFamily& family, const Belief& p, int n_max,
                       std::size_t grid_size);

/// General form: the DP runs on the given segment's one-parameter
/// grid. Families with more than two states must use this entry.
ValueCurve value_curve_on_segment(const GameFamily& family,
                                  const Segment& segment,
                                  const Rational& alpha_p, int n_max,
                                  std::size_t grid_size);

struct OperatorPropertyReport {
  std::size_t grid_size = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// min over trials and grid points of T[f] - T[g] with f >= g;
  /// monotonicity holds when >= -tolerance.
  double monotone_worst = 0.0;
  /// min over trials and grid points of T[f] - f; valid as a property
  /// only for almost-fair families.
  double increasing_worst = 0.0;
  /// Invariant-function check (runs only when a piecewise certificate
  /// is found on the full two-state segment): h_worst_slack is the
  /// min over stages 1..h_stages and grid points of h - V_n.
  bool h_checked = false;
  int h_stages = 0;
  double h_worst_slack = 0.0;
};

/// Randomized operator checks on a two-state family's full segment.
OperatorPropertyReport check_operator_properties(const GameFamily& family,
                                                 std::size_t grid_size,
                                                 std::size_t trials,
                                                 std::uint64_t seed);

}  // namespace repval
