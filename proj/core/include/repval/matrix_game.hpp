#pragma once

#include <optional>
#include <vector>

#include "repval/game.hpp"
#include "repval/rational.hpp"

namespace repval {

/// Exact solution of a finite zero-sum matrix game. The row player
/// maximizes. Both strategies are verified against the guarantee
/// inequalities before the struct is returned.
struct MatrixGameSolution {
  Rational value;
  MixedAction row_optimal;
  MixedAction col_optimal;
};

/// Solves the game by LP. Ties are broken by returning the
/// lexicographically smallest optimal strategy for each player, so the
/// result is a deterministic function of the matrix.
MatrixGameSolution solve_matrix_game(const RMat& m);

/// Per-coordinate range of the column player's optimal-strategy
/// polytope {y in Delta(J) : M y <= value * e}.
struct OptimalSetBounds {
  RVec lower;
  RVec upper;

  bool singleton() const;
};

/// Exact coordinate bounds via 2*J LPs. Throws std::invalid_argument
/// when no strategy attains the claimed value (caller passed a wrong
/// value).
OptimalSetBounds optimal_set_bounds(const RMat& m, const Rational& value);

/// Lexicographically smallest y in Delta(J) with M_a y <= 0 and
/// M_b y <= 0, or nullopt when the system is infeasible. The matrices
/// must share a column count; row counts may differ.
std::optional<MixedAction> feasible_common_strategy(const RMat& m_a,
                                                    const RMat& m_b);

struct SnowShapleyResult {
  std::vector<MixedAction> extremes;  // deduplicated, sorted
  // False when the matrix exceeds the 6x6 enumeration cap; extremes is
  // then empty and callers should use optimal_set_bounds instead.
  bool complete = false;
};

/// All extreme points of the column player's optimal set, found by
/// enumerating square submatrices and applying the adjugate kernel
/// formula y = adj(B) e / <e, adj(B) e>. Every candidate is filtered
/// by exact optimality checks, so the output never contains
/// non-optimal strategies.
SnowShapleyResult snow_shapley_extremes(const RMat& m);

}  // namespace repval
