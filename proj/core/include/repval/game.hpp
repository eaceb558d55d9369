#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repval/rational.hpp"

namespace repval {

/// Probability vector over states. Weights are exact, nonnegative, and
/// sum to 1; the constructor enforces this.
struct Belief {
  RVec weights;

  explicit Belief(RVec w);

  std::size_t size() const { return weights.size(); }
  const Rational& operator[](std::size_t k) const { return weights[k]; }
  bool operator==(const Belief&) const = default;
};

/// Probability vector over one player's actions. Same invariants as
/// Belief; kept as a distinct type because the two are never
/// interchangeable in signatures.
struct MixedAction {
  RVec weights;

  explicit MixedAction(RVec w);

  std::size_t size() const { return weights.size(); }
  const Rational& operator[](std::size_t j) const { return weights[j]; }
  bool operator==(const MixedAction&) const = default;
};

Belief dirac_belief(std::size_t k, std::size_t size);
MixedAction dirac_action(std::size_t j, std::size_t size);

/// Affine path p(alpha) = alpha*p_prime + (1-alpha)*p_double_prime in
/// the belief simplex; endpoints must differ, so the parametrization is
/// injective.
struct Segment {
  Belief p_prime;
  Belief p_double_prime;

  Segment(Belief prime, Belief double_prime);

  Belief at(const Rational& alpha) const;
};

/// The edge of the two-state simplex parametrized so that alpha is the
/// weight of state 1: p(alpha) = (1-alpha, alpha).
Segment full_simplex_segment();

/// A finite family of payoff matrices A^k, one per state, all of the
/// same shape. Rows belong to the maximizing (informed) player,
/// columns to the minimizing player. Immutable after construction.
class GameFamily {
 public:
  static GameFamily make(std::vector<std::string> states, std::size_t rows,
                         std::size_t cols, std::vector<RMat> payoffs);

  std::size_t num_states() const { return states_.size(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_label(std::size_t k) const { return states_[k]; }
  const RMat& payoff(std::size_t k) const { return payoffs_[k]; }
  const std::vector<RMat>& payoffs() const { return payoffs_; }

 private:
  GameFamily() = default;

  std::vector<std::string> states_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RMat> payoffs_;
};

/// Two-state 2x2 family whose values grow on the order of sqrt(N).
GameFamily make_zamir();

/// Two-state 2x2 family with a one-parameter payoff scale; values stay
/// bounded for every alpha in [0,1].
GameFamily make_dk(const Rational& alpha);

/// Two-state trading family on the price grid {0, 1/m, ..., 1}: entry
/// (i, j) is sgn(i-j) * (k - max(i,j)/m). Action index q means price
/// q/m, ascending.
GameFamily make_market(int m);

/// Accepts "zamir", "dk:alpha=<rational>", "market:m=<int>". Returns
/// nullopt on unknown names, missing parameters, or out-of-range
/// values.
std::optional<GameFamily> parse_builtin(std::string_view spec);

/// Entrywise convex combination sum_k p_k A^k, exact.
RMat expected_matrix(const GameFamily& family, const Belief& p);

/// Largest entrywise spread across states:
/// max over i, j, k, k' of |A^k_{i,j} - A^{k'}_{i,j}|.
Rational lipschitz_seminorm(const GameFamily& family);

/// Largest entrywise absolute difference of two same-shape matrices.
Rational matrix_max_abs_diff(const RMat& a, const RMat& b);

/// Shifts every state matrix by its own matrix-game value, so each
/// shifted matrix has value exactly 0. Defined in matrix_game.cpp
/// because it needs the game solver.
GameFamily normalize_flat(const GameFamily& family);

/// Appends one column per strategy: entry i of the new column in state
/// k is sum_j y_j A^k_{i,j}. Original columns are unchanged.
GameFamily pure_piecewise_transform(const GameFamily& family,
                                    const std::vector<MixedAction>& strategies);

/// Appends the row sum_i x_i A^k_{i,.} to every state matrix.
GameFamily add_mixed_row(const GameFamily& family, const MixedAction& x);

}  // namespace repval
