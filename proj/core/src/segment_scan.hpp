#pragma once

// Internal to the library sources; not installed.

#include <map>
#include <optional>

#include "repval/game.hpp"
#include "repval/matrix_game.hpp"

namespace repval::internal {

inline RMat neg_transpose(const RMat& m) {
  RMat out(m[0].size(), RVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = -m[i][j];
  return out;
}

/// Memoized per-alpha views of a family along a segment. Bisection
/// revisits every interior endpoint, so all three layers (expected
/// matrix, game solution, uniqueness) are cached by exact alpha.
class SegmentScan {
 public:
  SegmentScan(const GameFamily& family, const Segment& segment)
      : family_(family), segment_(segment) {}

  const RMat& matrix_at(const Rational& alpha) {
    auto it = matrices_.find(alpha);
    if (it == matrices_.end())
      it = matrices_
               .emplace(alpha, expected_matrix(family_, segment_.at(alpha)))
               .first;
    return it->second;
  }

  const MatrixGameSolution& solution_at(const Rational& alpha) {
    auto it = solutions_.find(alpha);
    if (it == solutions_.end())
      it = solutions_.emplace(alpha, solve_matrix_game(matrix_at(alpha)))
               .first;
    return it->second;
  }

  bool unique_at(const Rational& alpha) {
    auto it = unique_.find(alpha);
    if (it == unique_.end()) {
      const bool u =
          optimal_set_bounds(matrix_at(alpha), solution_at(alpha).value)
              .singleton();
      it = unique_.emplace(alpha, u).first;
    }
    return it->second;
  }

  /// Column strategy with guarantee <= 0 at both points; in an
  /// almost-fair family this is exactly joint optimality.
  std::optional<MixedAction> common_col(const Rational& a,
                                        const Rational& b) {
    return feasible_common_strategy(matrix_at(a), matrix_at(b));
  }

  std::optional<MixedAction> common_row(const Rational& a,
                                        const Rational& b) {
    return feasible_common_strategy(neg_transpose(matrix_at(a)),
                                    neg_transpose(matrix_at(b)));
  }

  const GameFamily& family() const { return family_; }
  const Segment& segment() const { return segment_; }

 private:
  const GameFamily& family_;
  const Segment& segment_;
  std::map<Rational, RMat> matrices_;
  std::map<Rational, MatrixGameSolution> solutions_;
  std::map<Rational, bool> unique_;
};

}  // namespace repval::internal
