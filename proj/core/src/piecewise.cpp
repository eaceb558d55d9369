#include "repval/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "repval/beliefs.hpp"
#include "repval/lp.hpp"
#include "repval/recursion.hpp"
#include "repval/rng.hpp"
#include "segment_scan.hpp"

namespace repval {

bool Region::contains(const Belief& p) const {
  if (p.size() != dim)
    throw std::invalid_argument("Region: dimension mismatch");
  for (const RVec& row : rows) {
    Rational dot(0);
    for (std::size_t k = 0; k < dim; ++k) dot += row[k] * p[k];
    if (dot > 0) return false;
  }
  return true;
}

std::vector<Region> regions_from_strategies(
    const GameFamily& family, const std::vector<MixedAction>& strategies) {
  std::vector<Region> regions;
  regions.reserve(strategies.size());
  for (const MixedAction& y : strategies) {
    if (y.size() != family.cols())
      throw std::invalid_argument(
          "regions_from_strategies: strategy size mismatch");
    Region region;
    region.dim = family.num_states();
    for (std::size_t i = 0; i < family.rows(); ++i) {
      RVec row(region.dim, Rational(0));
      for (std::size_t k = 0; k < region.dim; ++k)
        for (std::size_t j = 0; j < family.cols(); ++j)
          row[k] += family.payoff(k)[i][j] * y[j];
      region.rows.push_back(std::move(row));
    }
    regions.push_back(std::move(region));
  }
  return regions;
}

std::optional<std::pair<Rational, Rational>> region_segment_interval(
    const Region& region, const Segment& segment) {
  if (region.dim != segment.p_prime.size())
    throw std::invalid_argument(
        "region_segment_interval: dimension mismatch");
  Rational lo(0);
  Rational hi(1);
  for (const RVec& row : region.rows) {
    Rational at_prime(0);
    Rational at_second(0);
    for (std::size_t k = 0; k < region.dim; ++k) {
      at_prime += row[k] * segment.p_prime[k];
      at_second += row[k] * segment.p_double_prime[k];
    }
    // Constraint value along the segment: at_second + alpha * slope.
    const Rational slope = at_prime - at_second;
    if (slope == 0) {
      if (at_second > 0) return std::nullopt;
      continue;
    }
    const Rational bound = -at_second / slope;
    if (slope > 0) {
      if (bound < hi) hi = bound;
    } else {
      if (bound > lo) lo = bound;
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

namespace {

Rational strategy_gap(const MixedAction& a, const MixedAction& b) {
  Rational gap(0);
  for (std::size_t j = 0; j < a.size(); ++j)
    gap = std::max(gap, rational_abs(a[j] - b[j]));
  return gap;
}

/// One strategy with guarantee <= 0 at every listed segment point;
/// covers the spanned intervals by affinity of the constraints.
std::optional<MixedAction> common_strategy_at(
    internal::SegmentScan& scan, const std::set<Rational>& alphas) {
  lp::Model<Rational> model;
  const std::size_t cols = scan.family().cols();
  std::vector<int> y(cols);
  for (std::size_t j = 0; j < cols; ++j)
    y[j] = model.add_var(Rational(0));
  {
    std::vector<std::pair<int, Rational>> terms;
    for (int j : y) terms.push_back({j, Rational(1)});
    model.add_row(terms, lp::Cmp::EQ, Rational(1));
  }
  for (const Rational& alpha : alphas) {
    const RMat& m = scan.matrix_at(alpha);
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::vector<std::pair<int, Rational>> terms;
      for (std::size_t j = 0; j < cols; ++j)
        if (m[i][j] != 0) terms.push_back({y[j], m[i][j]});
      if (terms.empty()) continue;
      model.add_row(terms, lp::Cmp::LE, Rational(0));
    }
  }
  auto sol = lp::lexicographic_minimum(model, y);
  if (!sol) return std::nullopt;
  RVec weights(cols);
  for (std::size_t j = 0; j < cols; ++j)
    weights[j] = (*sol)[static_cast<std::size_t>(y[j])];
  return MixedAction(std::move(weights));
}

/// Merges certificate strategies pairwise whenever one strategy is
/// optimal across both strategies' intervals; repeats to a fixed
/// point. Only ever lowers the reported Q.
void unify_strategies(internal::SegmentScan& scan,
                      std::vector<MixedAction>& strategies,
                      std::vector<CertificateInterval>& intervals) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < strategies.size() && !changed; ++s) {
      for (std::size_t t = s + 1; t < strategies.size() && !changed; ++t) {
        std::set<Rational> endpoints;
        for (const CertificateInterval& iv : intervals)
          if (iv.strategy_index == s || iv.strategy_index == t) {
            endpoints.insert(iv.a);
            endpoints.insert(iv.b);
          }
        auto joint = common_strategy_at(scan, endpoints);
        if (!joint) continue;
        strategies[s] = std::move(*joint);
        strategies.erase(strategies.begin() + static_cast<std::ptrdiff_t>(t));
        for (CertificateInterval& iv : intervals) {
          if (iv.strategy_index == t)
            iv.strategy_index = s;
          else if (iv.strategy_index > t)
            --iv.strategy_index;
        }
        changed = true;
      }
    }
  }
}

}  // namespace

PiecewiseResult detect_piecewise(const GameFamily& family,
                                 const Segment& segment,
                                 const Rational& min_width) {
  if (min_width <= 0)
    throw std::invalid_argument("detect_piecewise: min_width must be > 0");

  internal::SegmentScan scan(family, segment);
  std::vector<MixedAction> strategies;
  std::vector<CertificateInterval> intervals;
  Rational cursor(0);
  while (cursor < 1) {
    // Largest feasible right end for a constant strategy from cursor,
    // located by bisection. hi always carries a failed joint solve.
    std::optional<MixedAction> witness = scan.common_col(cursor, Rational(1));
    Rational lo = cursor;
    Rational hi(1);
    if (witness) {
      lo = 1;
    } else {
      while (hi - lo >= min_width) {
        const Rational mid = (lo + hi) / 2;
        if (auto y = scan.common_col(cursor, mid)) {
          lo = mid;
          witness = std::move(y);
        } else {
          hi = mid;
        }
      }
    }

    if (!witness) {
      const MixedAction& y_a = scan.solution_at(cursor).col_optimal;
      const MixedAction& y_b = scan.solution_at(hi).col_optimal;
      if (!scan.unique_at(cursor))
        return PiecewiseInconclusive{
            cursor, hi,
            "optimal strategy not unique at segment coordinate " +
                to_string(cursor)};
      if (!scan.unique_at(hi))
        return PiecewiseInconclusive{
            cursor, hi,
            "optimal strategy not unique at segment coordinate " +
                to_string(hi)};
      const Rational gap = strategy_gap(y_a, y_b);
      if (gap == 0)
        return PiecewiseInconclusive{
            cursor, hi,
            "endpoint optima coincide despite joint infeasibility"};
      return NonPiecewiseEvidence{cursor, hi, y_a, y_b, gap};
    }

    // The witness stays optimal on its whole region; extending to the
    // region's exact boundary terminates non-dyadic breakpoints too.
    const Region region =
        regions_from_strategies(family, {*witness}).front();
    const auto span = region_segment_interval(region, segment);
    Rational end = lo;
    if (span && span->second > end) end = span->second;
    if (end > 1) end = 1;

    std::size_t index = strategies.size();
    for (std::size_t s = 0; s < strategies.size(); ++s)
      if (strategies[s] == *witness) {
        index = s;
        break;
      }
    if (index == strategies.size()) strategies.push_back(std::move(*witness));
    intervals.push_back({cursor, end, index});
    cursor = end;
  }

  unify_strategies(scan, strategies, intervals);
  return PiecewiseCertificate{std::move(strategies), std::move(intervals)};
}

CoverReport verify_cover_exact_1d(const std::vector<Region>& regions) {
  const Segment segment = full_simplex_segment();
  std::vector<std::pair<Rational, Rational>> spans;
  for (const Region& region : regions) {
    if (region.dim != 2)
      throw std::invalid_argument(
          "verify_cover_exact_1d: two-state regions only");
    if (auto span = region_segment_interval(region, segment))
      spans.push_back(*span);
  }
  std::sort(spans.begin(), spans.end());

  CoverReport report;
  report.mode = "exact-1d";
  Rational cover(0);
  Rational gap_end(1);
  for (const auto& span : spans) {
    if (span.first > cover) {
      gap_end = span.first;
      break;
    }
    if (span.second > cover) cover = span.second;
  }
  if (cover >= 1) {
    report.covered = true;
    return report;
  }
  report.uncovered_witness = segment.at((cover + gap_end) / 2);
  return report;
}

namespace {

/// Enumerates nonnegative integer vectors of length dim summing to
/// total, invoking visit on each; returns false when visit aborts.
bool compositions(std::size_t dim, std::size_t total,
                  std::vector<std::size_t>& parts, std::size_t at,
                  const std::function<bool(const std::vector<std::size_t>&)>&
                      visit) {
  if (at + 1 == dim) {
    parts[at] = total;
    return visit(parts);
  }
  for (std::size_t v = 0; v <= total; ++v) {
    parts[at] = v;
    if (!compositions(dim, total - v, parts, at + 1, visit)) return false;
  }
  return true;
}

}  // namespace

CoverReport verify_cover_grid(const std::vector<Region>& regions,
                              std::size_t dim, std::size_t resolution) {
  if (dim < 2)
    throw std::invalid_argument("verify_cover_grid: dim must be >= 2");
  if (resolution < 1)
    throw std::invalid_argument("verify_cover_grid: resolution must be >= 1");
  for (const Region& region : regions)
    if (region.dim != dim)
      throw std::invalid_argument("verify_cover_grid: dimension mismatch");

  CoverReport report;
  report.mode = "grid";
  report.covered = true;
  std::vector<std::size_t> parts(dim, 0);
  compositions(
      dim, resolution, parts, 0,
      [&](const std::vector<std::size_t>& point) {
        ++report.samples;
        RVec weights(dim);
        for (std::size_t k = 0; k < dim; ++k)
          weights[k] = Rational(point[k]) / Rational(resolution);
        const Belief p(std::move(weights));
        for (const Region& region : regions)
          if (region.contains(p)) return true;
        report.covered = false;
        report.uncovered_witness = p;
        return false;
      });
  return report;
}

Rational theorem1_bound(const GameFamily& family,
                        const PiecewiseCertificate& cert) {
  return lipschitz_seminorm(family) * Rational(cert.q());
}

namespace {

double l2_norm(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

}  // namespace

RevelationConstants estimate_small_revelation_constants(
    const GameFamily& family, const Segment& segment, int samples,
    std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument(
        "estimate_small_revelation_constants: samples must be >= 1");

  Rng rng(seed);
  const std::uint64_t denom = 4096;
  std::vector<std::pair<Rational, Rational>> pairs;
  pairs.reserve(static_cast<std::size_t>(samples));
  for (int t = 0; t < samples; ++t) {
    const Rational a1 = rng.unit_rational(denom);
    Rational a2 = rng.unit_rational(denom);
    while (a2 == a1) a2 = rng.unit_rational(denom);
    pairs.push_back({a1, a2});
  }

  RevelationConstants out;
  out.samples = samples;
  out.seed = seed;

  // Exact pair-splitting slope; the defining inequality of the growth
  // condition is checked against this minimum.
  bool first = true;
  for (const auto& [a1, a2] : pairs) {
    const BeliefDistribution dist = BeliefDistribution::make(
        {segment.at(a1), segment.at(a2)}, {Rational(1) / 2, Rational(1) / 2});
    const Rational ratio = v1(family, dist) / rational_abs(a1 - a2);
    if (first || ratio < out.c_a) out.c_a = ratio;
    first = false;
  }

  // The slope constants require a unique optimum at every sampled
  // point; the first failure is reported instead of the constants.
  internal::SegmentScan scan(family, segment);
  std::set<Rational> alphas;
  for (const auto& [a1, a2] : pairs) {
    alphas.insert(a1);
    alphas.insert(a2);
  }
  for (const Rational& alpha : alphas)
    if (!scan.unique_at(alpha)) {
      out.non_unique_alpha = alpha;
      return out;
    }

  double c = std::numeric_limits<double>::infinity();
  for (const auto& [a1, a2] : pairs) {
    const std::vector<double> ya =
        to_double_vec(scan.solution_at(a1).col_optimal.weights);
    const std::vector<double> yb =
        to_double_vec(scan.solution_at(a2).col_optimal.weights);
    std::vector<double> diff(ya.size());
    for (std::size_t j = 0; j < ya.size(); ++j) diff[j] = ya[j] - yb[j];
    c = std::min(c, l2_norm(diff) / to_double(rational_abs(a1 - a2)));
  }
  out.c = c;

  // Deviation cost slope: blend toward each vertex and two random
  // mixtures; the blends stay in the simplex, and uniqueness makes the
  // cost strictly positive.
  const double step = 1.0 / 1024.0;
  double c_prime = std::numeric_limits<double>::infinity();
  for (const Rational& alpha : alphas) {
    const RMat& m = scan.matrix_at(alpha);
    const std::vector<double> y =
        to_double_vec(scan.solution_at(alpha).col_optimal.weights);
    std::vector<std::vector<double>> targets;
    for (std::size_t j = 0; j < y.size(); ++j) {
      std::vector<double> vertex(y.size(), 0.0);
      vertex[j] = 1.0;
      targets.push_back(std::move(vertex));
    }
    for (int r = 0; r < 2; ++r)
      targets.push_back(to_double_vec(rng.simplex_point(y.size(), denom)));
    for (const std::vector<double>& target : targets) {
      std::vector<double> dir(y.size());
      for (std::size_t j = 0; j < y.size(); ++j) dir[j] = target[j] - y[j];
      const double norm = l2_norm(dir);
      if (norm == 0.0) continue;
      double cost = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j)
          row += to_double(m[i][j]) * (y[j] + step * dir[j]);
        cost = std::max(cost, row);
      }
      c_prime = std::min(c_prime, cost / (step * norm));
    }
  }
  out.c_prime = c_prime;
  return out;
}

}  // namespace repval
