#include "repval/beliefs.hpp"

#include <stdexcept>
#include <utility>

#include "repval/lp.hpp"

namespace repval {

BeliefDistribution BeliefDistribution::make(std::vector<Belief> atoms,
                                            RVec weights) {
  if (atoms.empty())
    throw std::invalid_argument("BeliefDistribution: no atoms");
  if (atoms.size() != weights.size())
    throw std::invalid_argument(
        "BeliefDistribution: atom/weight count mismatch");
  Rational total(0);
  for (const Rational& w : weights) {
    if (w < 0)
      throw std::invalid_argument("BeliefDistribution: negative weight");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("BeliefDistribution: weights must sum to 1");
  for (const Belief& p : atoms)
    if (p.size() != atoms.front().size())
      throw std::invalid_argument("BeliefDistribution: atom size mismatch");
  BeliefDistribution out;
  out.atoms = std::move(atoms);
  out.weights = std::move(weights);
  return out;
}

Belief BeliefDistribution::barycenter() const {
  RVec bary(atoms.front().size(), Rational(0));
  for (std::size_t s = 0; s < atoms.size(); ++s)
    for (std::size_t k = 0; k < bary.size(); ++k)
      bary[k] += weights[s] * atoms[s][k];
  return Belief(std::move(bary));
}

BeliefDistribution dirac_distribution(Belief p) {
  return BeliefDistribution::make({std::move(p)}, {Rational(1)});
}

Rational tv_distance(const Belief& p, const Belief& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("tv_distance: size mismatch");
  Rational l1(0);
  for (std::size_t k = 0; k < p.size(); ++k)
    l1 += rational_abs(p[k] - q[k]);
  return l1 / 2;
}

Rational tv_distance_to_region(const Belief& p, const Region& region) {
  const std::size_t dim = p.size();
  if (region.dim != dim)
    throw std::invalid_argument("tv_distance_to_region: dimension mismatch");

  // Variables: q in the simplex meeting the region, plus per-coordinate
  // deviations u_k >= |p_k - q_k|; minimizing (1/2) sum u_k makes every
  // u_k tight, so the optimum is the TV distance.
  lp::Model<Rational> model;
  std::vector<int> q(dim), u(dim);
  for (std::size_t k = 0; k < dim; ++k) q[k] = model.add_var(Rational(0));
  for (std::size_t k = 0; k < dim; ++k)
    u[k] = model.add_var(Rational(1) / 2);
  {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t k = 0; k < dim; ++k) terms.push_back({q[k], 1});
    model.add_row(terms, lp::Cmp::EQ, Rational(1));
  }
  for (const RVec& row : region.rows) {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t k = 0; k < dim; ++k)
      if (row[k] != 0) terms.push_back({q[k], row[k]});
    model.add_row(terms, lp::Cmp::LE, Rational(0));
  }
  for (std::size_t k = 0; k < dim; ++k) {
    model.add_row({{q[k], 1}, {u[k], -1}}, lp::Cmp::LE, p[k]);
    model.add_row({{q[k], -1}, {u[k], -1}}, lp::Cmp::LE, -p[k]);
  }
  auto res = model.minimize();
  if (res.status == lp::Status::Infeasible)
    throw std::invalid_argument("tv_distance_to_region: empty region");
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("tv_distance_to_region: unexpected LP status");
  return res.objective;
}

Rational kantorovich_d2(const BeliefDistribution& a,
                        const BeliefDistribution& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();

  // Transport plan pi[s][t] >= 0 with marginals a.weights and
  // b.weights; cost of route (s,t) is the ground TV distance.
  lp::Model<Rational> model;
  std::vector<std::vector<int>> pi(na, std::vector<int>(nb));
  for (std::size_t s = 0; s < na; ++s)
    for (std::size_t t = 0; t < nb; ++t)
      pi[s][t] = model.add_var(tv_distance(a.atoms[s], b.atoms[t]));
  for (std::size_t s = 0; s < na; ++s) {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t t = 0; t < nb; ++t) terms.push_back({pi[s][t], 1});
    model.add_row(terms, lp::Cmp::EQ, a.weights[s]);
  }
  // One marginal row is implied by the others; keeping it is harmless
  // because the solver drops dependent rows during canonicalization.
  for (std::size_t t = 0; t < nb; ++t) {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t s = 0; s < na; ++s) terms.push_back({pi[s][t], 1});
    model.add_row(terms, lp::Cmp::EQ, b.weights[t]);
  }
  auto res = model.minimize();
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("kantorovich_d2: unexpected LP status");
  return res.objective;
}

Rational invariant_h(const GameFamily& family,
                     const std::vector<Region>& regions, const Belief& p) {
  if (regions.empty())
    throw std::invalid_argument("invariant_h: no regions");
  const Rational lip = lipschitz_seminorm(family);
  Rational sum(0);
  for (const Region& region : regions)
    sum += 1 - tv_distance_to_region(p, region);
  return lip * sum;
}

}  // namespace repval
