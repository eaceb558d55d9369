#pragma once

#include <cstddef>
#include <vector>

#include "repval/game.hpp"
#include "repval/piecewise.hpp"

namespace repval {

/// Finitely supported distribution over beliefs. The barycenter is the
/// belief an observer holds before learning which atom was drawn.
struct BeliefDistribution {
  std::vector<Belief> atoms;
  RVec weights;

  /// Validates: nonempty, equal lengths, matching belief sizes,
  /// weights >= 0 summing to 1. Zero-weight atoms are allowed.
  static BeliefDistribution make(std::vector<Belief> atoms, RVec weights);

  std::size_t size() const { return atoms.size(); }
  Belief barycenter() const;
};

/// Dirac distribution concentrated on one belief.
BeliefDistribution dirac_distribution(Belief p);

/// Total-variation distance, computed as half the L1 distance. Exact.
Rational tv_distance(const Belief& p, const Belief& q);

/// Minimum total-variation distance from p to the region (intersected
/// with the simplex). Exact LP. Throws std::invalid_argument when the
/// region does not meet the simplex, and when dimensions disagree.
Rational tv_distance_to_region(const Belief& p, const Region& region);

/// Kantorovich (optimal-transport) distance between two belief
/// distributions with tv_distance as ground cost. Exact LP.
Rational kantorovich_d2(const BeliefDistribution& a,
                        const BeliefDistribution& b);

/// h(p) = lip * sum over regions of (1 - distance to region). With a
/// covering region list this is a fixed point of the value operator,
/// hence an upper invariant for the value curve. Exact.
Rational invariant_h(const GameFamily& family,
                     const std::vector<Region>& regions, const Belief& p);

}  // namespace repval
