#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "repval/game.hpp"
#include "repval/matrix_game.hpp"
#include "repval/rational.hpp"

namespace repval {

/// Polytope {p in Delta(K) : rows * p <= 0}, stored as the coefficient
/// rows only. The simplex constraints are implicit; membership and
/// distance computations add them back.
struct Region {
  std::size_t dim = 0;
  std::vector<RVec> rows;

  /// Exact membership of a belief (simplex membership is already
  /// guaranteed by the Belief type).
  bool contains(const Belief& p) const;
};

/// Region where the strategy y is optimal in an almost-fair family:
/// one row per informed-player action i, sum_k p_k (A^k y)_i <= 0.
std::vector<Region> regions_from_strategies(
    const GameFamily& family, const std::vector<MixedAction>& strategies);

/// The set {alpha in [0,1] : p(alpha) in region} along a segment; the
/// constraint rows are affine in alpha, so it is a closed interval.
/// Returns nullopt when the intersection is empty.
std::optional<std::pair<Rational, Rational>> region_segment_interval(
    const Region& region, const Segment& segment);

struct CertificateInterval {
  Rational a;
  Rational b;
  std::size_t strategy_index;
};

/// Finite list of strategies whose optimality regions tile the
/// segment. Intervals are ordered and share endpoints; strategies are
/// deduplicated, so q() counts distinct strategies, not intervals.
struct PiecewiseCertificate {
  std::vector<MixedAction> strategies;
  std::vector<CertificateInterval> intervals;

  std::size_t q() const { return strategies.size(); }
};

/// Interval of width below the detection threshold whose endpoints
/// carry certified-unique, distinct optimal strategies: on it, no
/// single strategy stays optimal, which is the growth-condition
/// hypothesis rather than a failure of the search.
struct NonPiecewiseEvidence {
  Rational a;
  Rational b;
  MixedAction y_a;
  MixedAction y_b;
  Rational strategy_gap;  // max coordinate distance, > 0
};

struct PiecewiseInconclusive {
  Rational a;
  Rational b;
  std::string reason;
};

using PiecewiseResult = std::variant<PiecewiseCertificate,
                                     NonPiecewiseEvidence,
                                     PiecewiseInconclusive>;

/// Greedy left-to-right maximal cover by constant-strategy intervals.
/// Each interval's right end is found by bisection and then extended
/// to the exact boundary of the witness strategy's region, so
/// non-dyadic breakpoints terminate the search too. Requires the
/// family to be almost-fair on the segment. When an uncovered interval
/// shrinks below min_width, the result is evidence (unique distinct
/// endpoint optima) or inconclusive (uniqueness failed).
PiecewiseResult detect_piecewise(const GameFamily& family,
                                 const Segment& segment,
                                 const Rational& min_width);

struct CoverReport {
  bool covered = false;
  std::optional<Belief> uncovered_witness;
  std::string mode;
  std::size_t samples = 0;  // points tested in grid mode
};

/// Exact union check along the two-state simplex edge: each region is
/// intersected with the segment exactly and the intervals are swept.
/// Requires every region to have dim == 2.
CoverReport verify_cover_exact_1d(const std::vector<Region>& regions);

/// Membership test at every belief with denominator `resolution`.
/// Works for any dimension; exact at each sampled point but not a
/// proof of coverage.
CoverReport verify_cover_grid(const std::vector<Region>& regions,
                              std::size_t dim, std::size_t resolution);

/// lipschitz_seminorm(family) * q(), the uniform upper bound on every
/// V_N that a valid certificate yields.
Rational theorem1_bound(const GameFamily& family,
                        const PiecewiseCertificate& cert);

/// Sampled estimates of the growth-condition constants along a
/// segment. c_a is exact at the sampled pairs; c and c_prime require a
/// unique optimum at every sampled point and are absent otherwise,
/// with a witness alpha.
struct RevelationConstants {
  Rational c_a;                   // min one-stage pair value / alpha gap
  std::optional<double> c;        // min strategy separation slope
  std::optional<double> c_prime;  // min deviation cost slope
  std::optional<Rational> non_unique_alpha;
  int samples = 0;
  std::uint64_t seed = 0;
};

RevelationConstants estimate_small_revelation_constants(
    const GameFamily& family, const Segment& segment, int samples,
    std::uint64_t seed);

}  // namespace repval
