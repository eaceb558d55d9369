#include "repval/nonrevealing.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "segment_scan.hpp"

namespace repval {

using internal::SegmentScan;

Rational u_value(const GameFamily& family, const Belief& p) {
  return solve_matrix_game(expected_matrix(family, p)).value;
}

namespace {

class FairScan : public SegmentScan {
 public:
  FairScan(const GameFamily& family, const Segment& segment)
      : SegmentScan(family, segment) {}

  std::optional<WitnessPair> witness(const Rational& a, const Rational& b) {
    auto y = common_col(a, b);
    if (!y) return std::nullopt;
    auto x = common_row(a, b);
    if (!x) return std::nullopt;
    return WitnessPair{std::move(*x), std::move(*y)};
  }

  void scan(const Rational& a, const Rational& b, int d) {
    if (auto w = witness(a, b)) {
      certified.push_back({a, b, std::move(*w)});
      return;
    }
    if (d == 0) {
      uncovered = true;
      sample(a);
      sample(b);
      return;
    }
    const Rational mid = (a + b) / 2;
    scan(a, mid, d - 1);
    scan(mid, b, d - 1);
  }

  void sample(const Rational& alpha) {
    if (!sampled.insert(alpha).second) return;
    const Rational u = solution_at(alpha).value;
    if (u == 0)
      zeros.push_back(alpha);
    else
      violations.push_back({alpha, u});
  }

  std::vector<CertifiedInterval> certified;
  std::set<Rational> sampled;
  std::vector<Rational> zeros;
  std::vector<SampledViolation> violations;
  bool uncovered = false;
};

}  // namespace

AlmostFairReport almost_fair_check(const GameFamily& family,
                                   const Segment& segment, int depth) {
  if (depth < 0)
    throw std::invalid_argument("almost_fair_check: negative depth");
  FairScan scan(family, segment);
  scan.scan(Rational(0), Rational(1), depth);

  // Adjacent certified intervals collapse when a joint witness exists;
  // sibling pairs never merge (their parent already failed), but pairs
  // from different subtrees can.
  std::vector<CertifiedInterval> merged;
  for (CertifiedInterval& cur : scan.certified) {
    if (!merged.empty() && merged.back().b == cur.a) {
      if (auto w = scan.witness(merged.back().a, cur.b)) {
        merged.back().b = cur.b;
        merged.back().witness = std::move(*w);
        continue;
      }
    }
    merged.push_back(std::move(cur));
  }

  AlmostFairReport report;
  report.certified = std::move(merged);
  report.sampled_zero_points = std::move(scan.zeros);
  report.violations = std::move(scan.violations);
  report.lipschitz_rate = matrix_max_abs_diff(
      expected_matrix(family, segment.p_prime),
      expected_matrix(family, segment.p_double_prime));
  report.fully_certified = !scan.uncovered;
  report.epsilon_bound = report.fully_certified
                             ? Rational(0)
                             : report.lipschitz_rate * dyadic_unit(depth);
  return report;
}

namespace {

struct BpLeaf {
  Rational a;
  Rational b;
  bool constant;
  std::optional<MixedAction> strategy;  // common witness when constant
};

class BpScan : public SegmentScan {
 public:
  BpScan(const GameFamily& family, const Segment& segment, int depth)
      : SegmentScan(family, segment), min_width_(dyadic_unit(depth)) {}

  void scan(const Rational& a, const Rational& b) {
    if (auto y = common_col(a, b)) {
      leaves.push_back({a, b, true, std::move(y)});
      return;
    }
    if (b - a < min_width_) {
      leaves.push_back({a, b, false, std::nullopt});
      return;
    }
    const Rational mid = (a + b) / 2;
    scan(a, mid);
    scan(mid, b);
  }

  std::vector<BpLeaf> leaves;

 private:
  Rational min_width_;
};

}  // namespace

BreakpointReport parametric_breakpoints(const GameFamily& family,
                                        const Segment& segment, int depth) {
  if (depth < 1)
    throw std::invalid_argument("parametric_breakpoints: depth must be >= 1");
  BpScan scan(family, segment, depth);
  scan.scan(Rational(0), Rational(1));

  // Merge adjacent leaves of the same kind. Constant leaves merge only
  // when a joint witness spans the union, varying leaves always do.
  std::vector<BpLeaf> merged;
  for (BpLeaf& cur : scan.leaves) {
    if (!merged.empty() && merged.back().b == cur.a &&
        merged.back().constant == cur.constant) {
      if (!cur.constant) {
        merged.back().b = cur.b;
        continue;
      }
      if (auto y = scan.common_col(merged.back().a, cur.b)) {
        merged.back().b = cur.b;
        merged.back().strategy = std::move(y);
        continue;
      }
    }
    merged.push_back(std::move(cur));
  }

  BreakpointReport report;
  for (const BpLeaf& leaf : merged) {
    BreakpointInterval out{
        leaf.a, leaf.b, leaf.constant, true,
        leaf.constant
            ? *leaf.strategy
            : scan.solution_at((leaf.a + leaf.b) / 2).col_optimal};
    // Uniqueness is sampled at the interval's endpoints and midpoint.
    for (const Rational& alpha :
         {leaf.a, Rational((leaf.a + leaf.b) / 2), leaf.b})
      if (!scan.unique_at(alpha)) out.unique = false;
    report.intervals.push_back(std::move(out));
  }
  return report;
}

}  // namespace repval
