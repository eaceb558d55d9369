#pragma once

#include <vector>

#include "repval/game.hpp"
#include "repval/matrix_game.hpp"
#include "repval/rational.hpp"

namespace repval {

/// Value of the one-shot game with expected matrix sum_k p_k A^k,
/// exact.
Rational u_value(const GameFamily& family, const Belief& p);

/// Joint witness that the expected game is fair on a whole
/// sub-interval: x guarantees >= 0 and y guarantees <= 0 at both
/// endpoints, hence on the interval, because the guarantees are affine
/// in alpha.
struct WitnessPair {
  MixedAction x;
  MixedAction y;
};

struct CertifiedInterval {
  Rational a;
  Rational b;
  WitnessPair witness;
};

struct SampledViolation {
  Rational alpha;
  Rational u;  // nonzero by construction
};

/// Outcome of the fairness scan along a segment. Certified intervals
/// carry exact interval-wide proofs; the rest of the segment is only
/// spot-checked at dyadic points, with epsilon_bound the Lipschitz
/// slack between neighboring checks. epsilon_bound is 0 exactly when
/// the certified intervals cover the whole segment.
struct AlmostFairReport {
  std::vector<CertifiedInterval> certified;    // sorted, disjoint
  std::vector<Rational> sampled_zero_points;   // exact u(alpha) = 0
  std::vector<SampledViolation> violations;    // exact u(alpha) != 0
  Rational lipschitz_rate;   // max entrywise |A(p') - A(p'')|
  Rational epsilon_bound;
  bool fully_certified = false;
};

/// Bisects [0,1] to the given dyadic depth. Each node is first tried
/// as one certified interval via a common witness pair at its
/// endpoints; only failing nodes split. Leaves that stay uncertified
/// contribute exact zero checks at their endpoints instead. A final
/// pass merges adjacent certified intervals that admit a joint
/// witness.
AlmostFairReport almost_fair_check(const GameFamily& family,
                                   const Segment& segment, int depth);

struct BreakpointInterval {
  Rational a;
  Rational b;
  // One strategy is optimal on the whole interval (witness stored in
  // `strategy`). When false, `strategy` is the optimum at the interval
  // midpoint and the optimal strategy varies inside the interval.
  bool constant = false;
  // Optimal set was a singleton at every examined sample point of the
  // interval. Evidence at rational samples, not an interval-wide proof.
  bool unique = false;
  MixedAction strategy;
};

/// Intervals partition [0,1] in order.
struct BreakpointReport {
  std::vector<BreakpointInterval> intervals;
};

/// Adaptive bisection along the segment: an interval closes when a
/// common optimal strategy exists at its endpoints or when its width
/// falls below 2^-depth. Adjacent closed intervals merge when both are
/// constant with the same strategy or both are varying. Requires the
/// family to be almost-fair on the segment, so optimality of y at
/// alpha is exactly the guarantee A(alpha) y <= 0.
BreakpointReport parametric_breakpoints(const GameFamily& family,
                                        const Segment& segment, int depth);

}  // namespace repval
