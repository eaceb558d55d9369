#pragma once

#include <cstdint>
#include <vector>

#include "repval/game.hpp"

namespace repval {

/// Absorption level for the stage-N walk: the smallest integer t with
/// (t + 1)^2 >= 4N, i.e. the ceiling of 2*sqrt(N) - 1. Minimality
/// gives t^2 < 4N strictly, so every live position stays inside the
/// open segment.
int walk_threshold(int n);

/// P(tau_N > N): the simple random walk started at 0 stays strictly
/// below the threshold in absolute value through stage N. Exact.
Rational tau_survival_probability(int n);

/// Lower bound for the stage-N value at the segment midpoint: the
/// expected sum of one-stage splitting values along the absorbed walk,
/// one feasible posterior martingale. Probabilities are exact; the
/// per-position splitting values run in floating point because the
/// positions involve sqrt(N).
struct WalkBound {
  int n = 0;
  int threshold = 0;
  double step = 0.0;  // alpha-units per walk unit, 1/(4*sqrt(N))
  double lower_bound = 0.0;
  double per_sqrt_n = 0.0;  // lower_bound / sqrt(N)
  Rational survival;        // P(tau_N > N)
};

WalkBound walk_lower_bound_exact(const GameFamily& family,
                                 const Segment& segment, int n);

/// Overlap weight 1 - tv(p, mid) of the prior with the segment
/// midpoint; derived reports scale the midpoint bound by this factor.
/// Concavity of a value curve that vanishes at the segment endpoints
/// only supports the smaller factor 1 - 2*tv(p, mid), so the scaled
/// bound is heuristic away from the midpoint.
Rational walk_prior_weight(const Segment& segment, const Belief& p);

struct WalkTraceRow {
  int stage = 0;  // 1-based
  long long z = 0;
  double alpha = 0.0;
  bool absorbed = false;
  double contribution = 0.0;  // 0 once absorbed
};

/// Monte Carlo estimate of the same expectation, with the first
/// trial's trace retained for inspection. Reproducible from the seed;
/// trials draw from independent substreams, so the estimate does not
/// depend on evaluation order.
struct WalkSimulation {
  int n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::vector<WalkTraceRow> sample_trace;
};

WalkSimulation simulate_walk(const GameFamily& family,
                             const Segment& segment, int n,
                             std::size_t trials, std::uint64_t seed);

}  // namespace repval
