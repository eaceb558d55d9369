#include "repval/walk.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "repval/beliefs.hpp"
#include "repval/recursion.hpp"
#include "repval/rng.hpp"

namespace repval {

int walk_threshold(int n) {
  if (n < 1) throw std::invalid_argument("walk_threshold: n must be >= 1");
  int t = 0;
  while ((t + 1) * (t + 1) < 4 * n) ++t;
  return t;
}

namespace {

/// Occupancy vector indexed by z + threshold; entry z is
/// P(Z^(n) = z and |Z^(m)| < threshold for all m <= n).
using Occupancy = std::vector<Rational>;

Occupancy initial_occupancy(int threshold) {
  Occupancy occ(2 * static_cast<std::size_t>(threshold) + 1, Rational(0));
  occ[static_cast<std::size_t>(threshold)] = 1;
  return occ;
}

Occupancy evolve(const Occupancy& occ, int threshold) {
  Occupancy next(occ.size(), Rational(0));
  const Rational half = Rational(1) / 2;
  for (std::size_t idx = 0; idx < occ.size(); ++idx) {
    if (occ[idx] == 0) continue;
    const long long z = static_cast<long long>(idx) - threshold;
    for (const long long dz : {-1LL, 1LL}) {
      const long long zn = z + dz;
      if (zn <= -threshold || zn >= threshold) continue;  // absorbed
      next[static_cast<std::size_t>(zn + threshold)] += occ[idx] * half;
    }
  }
  return next;
}

}  // namespace

Rational tau_survival_probability(int n) {
  if (n < 1)
    throw std::invalid_argument("tau_survival_probability: n must be >= 1");
  const int threshold = walk_threshold(n);
  Occupancy occ = initial_occupancy(threshold);
  // Z^(1) = 0; |0| < threshold always (threshold >= 1), so the start
  // survives. Each evolve step advances one stage and absorbs.
  for (int stage = 1; stage < n; ++stage) occ = evolve(occ, threshold);
  Rational survival(0);
  for (const Rational& mass : occ) survival += mass;
  return survival;
}

namespace {

/// Splitting value of the +-1 jump from position z, in alpha-units.
double jump_value(const GameFamily& family, const Segment& segment,
                  long long z, double step) {
  const double alpha = 0.5 + static_cast<double>(z) * step;
  const std::vector<double> a = to_double_vec(segment.p_prime.weights);
  const std::vector<double> b = to_double_vec(segment.p_double_prime.weights);
  auto point = [&](double at) {
    std::vector<double> p(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
      p[k] = at * a[k] + (1.0 - at) * b[k];
    return p;
  };
  return v1_numeric(family,
                    {point(alpha + step), point(alpha - step)}, {0.5, 0.5});
}

}  // namespace

WalkBound walk_lower_bound_exact(const GameFamily& family,
                                 const Segment& segment, int n) {
  if (n < 1)
    throw std::invalid_argument("walk_lower_bound_exact: n must be >= 1");
  const int threshold = walk_threshold(n);
  const double step = 1.0 / (4.0 * std::sqrt(static_cast<double>(n)));
  // Minimality of the threshold keeps every split endpoint inside
  // [0, 1]; a violation here means the two conventions diverged.
  if (static_cast<double>(threshold) * step >= 0.5)
    throw std::logic_error("walk positions leave the segment");

  std::map<long long, double> jump_cache;
  auto jump_at = [&](long long z) {
    auto it = jump_cache.find(z);
    if (it == jump_cache.end())
      it = jump_cache.emplace(z, jump_value(family, segment, z, step)).first;
    return it->second;
  };

  WalkBound out;
  out.n = n;
  out.threshold = threshold;
  out.step = step;

  Occupancy occ = initial_occupancy(threshold);
  double total = 0.0;
  for (int stage = 1; stage <= n; ++stage) {
    for (std::size_t idx = 0; idx < occ.size(); ++idx) {
      if (occ[idx] == 0) continue;
      const long long z = static_cast<long long>(idx) - threshold;
      total += to_double(occ[idx]) * jump_at(z);
    }
    if (stage < n) occ = evolve(occ, threshold);
  }
  out.lower_bound = total;
  out.per_sqrt_n = total / std::sqrt(static_cast<double>(n));
  Rational survival(0);
  for (const Rational& mass : occ) survival += mass;
  out.survival = survival;
  return out;
}

Rational walk_prior_weight(const Segment& segment, const Belief& p) {
  const Belief mid = segment.at(Rational(1) / 2);
  if (p.size() != mid.size())
    throw std::invalid_argument("walk_prior_weight: dimension mismatch");
  Rational l1(0);
  for (std::size_t k = 0; k < p.size(); ++k)
    l1 += rational_abs(p[k] - mid[k]);
  return 1 - l1 / 2;
}

WalkSimulation simulate_walk(const GameFamily& family,
                             const Segment& segment, int n,
                             std::size_t trials, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("simulate_walk: n must be >= 1");
  if (trials < 1)
    throw std::invalid_argument("simulate_walk: trials must be >= 1");
  const int threshold = walk_threshold(n);
  const double step = 1.0 / (4.0 * std::sqrt(static_cast<double>(n)));

  std::map<long long, double> jump_cache;
  auto jump_at = [&](long long z) {
    auto it = jump_cache.find(z);
    if (it == jump_cache.end())
      it = jump_cache.emplace(z, jump_value(family, segment, z, step)).first;
    return it->second;
  };

  WalkSimulation out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;

  const Rng base(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = base.substream(trial);
    long long z = 0;
    bool absorbed = false;
    double total = 0.0;
    for (int stage = 1; stage <= n; ++stage) {
      double contribution = 0.0;
      if (!absorbed) {
        contribution = jump_at(z);
        total += contribution;
      }
      if (trial == 0)
        out.sample_trace.push_back(
            {stage, z, 0.5 + static_cast<double>(z) * step, absorbed,
             contribution});
      if (!absorbed) {
        z += rng.below(2) == 0 ? -1 : 1;
        if (z <= -threshold || z >= threshold) absorbed = true;
      }
    }
    sum += total;
    sum_sq += total * total;
  }
  const double mean = sum / static_cast<double>(trials);
  out.estimate = mean;
  if (trials > 1) {
    const double var =
        (sum_sq - sum * mean) / static_cast<double>(trials - 1);
    out.standard_error =
        std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
  }
  return out;
}

}  // namespace repval
