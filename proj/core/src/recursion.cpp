#include "repval/recursion.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "repval/lp.hpp"
#include "repval/matrix_game.hpp"
#include "repval/piecewise.hpp"
#include "repval/rng.hpp"

namespace repval {

namespace {

/// Expected matrices at the grid beliefs, one [I][J] block per atom.
template <typename T>
using MatrixSet = std::vector<std::vector<std::vector<T>>>;

std::vector<std::vector<double>> matrix_to_double(const RMat& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = to_double_vec(m[i]);
  return out;
}

/// Grid operator as one LP over splitting weights. Variables are one
/// weight per (atom, informed-player row) pair plus a free guarantee
/// level beta; the optimum is max over grid-supported splittings of
/// [one-stage value + expected f]. The guarantee rows have zero right
/// hand side, so only the two moment equalities need artificials.
template <typename T>
T t_grid_optimum(const MatrixSet<T>& mats, const std::vector<T>& alphas,
                 const std::vector<T>& f, const T& alpha_p) {
  const std::size_t atoms = mats.size();
  const std::size_t rows = mats[0].size();
  const std::size_t cols = mats[0][0].size();

  lp::Model<T> model;
  std::vector<int> w(atoms * rows);
  for (std::size_t s = 0; s < atoms; ++s)
    for (std::size_t i = 0; i < rows; ++i)
      w[s * rows + i] = model.add_var(f[s]);
  const int beta = model.add_free_var(T(1));

  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<std::pair<int, T>> terms;
    terms.push_back({beta, T(1)});
    for (std::size_t s = 0; s < atoms; ++s)
      for (std::size_t i = 0; i < rows; ++i)
        if (mats[s][i][j] != T(0))
          terms.push_back({w[s * rows + i], -mats[s][i][j]});
    model.add_row(terms, lp::Cmp::LE, T(0));
  }
  {
    std::vector<std::pair<int, T>> terms;
    for (int v : w) terms.push_back({v, T(1)});
    model.add_row(terms, lp::Cmp::EQ, T(1));
  }
  {
    std::vector<std::pair<int, T>> terms;
    for (std::size_t s = 0; s < atoms; ++s)
      for (std::size_t i = 0; i < rows; ++i)
        if (alphas[s] != T(0)) terms.push_back({w[s * rows + i], alphas[s]});
    model.add_row(terms, lp::Cmp::EQ, alpha_p);
  }

  auto res = model.maximize();
  if (res.status == lp::Status::Infeasible)
    throw std::invalid_argument(
        "grid operator: prior outside the grid's hull");
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("grid operator: unexpected LP status");
  return res.objective;
}

MatrixSet<double> grid_matrices(const GameFamily& family,
                                const Segment& segment,
                                const std::vector<Rational>& alphas) {
  MatrixSet<double> mats;
  mats.reserve(alphas.size());
  for (const Rational& alpha : alphas)
    mats.push_back(
        matrix_to_double(expected_matrix(family, segment.at(alpha))));
  return mats;
}

/// Exact alpha-coordinate of p on the segment, if p lies on it.
Rational segment_coordinate(const Segment& segment, const Belief& p) {
  const Belief& a = segment.p_prime;
  const Belief& b = segment.p_double_prime;
  if (p.size() != a.size())
    throw std::invalid_argument("segment coordinate: dimension mismatch");
  std::size_t pivot = 0;
  while (pivot < a.size() && a[pivot] == b[pivot]) ++pivot;
  // Segments have distinct endpoints, so pivot is in range.
  const Rational alpha = (p[pivot] - b[pivot]) / (a[pivot] - b[pivot]);
  if (alpha < 0 || alpha > 1)
    throw std::invalid_argument("prior not on the grid segment");
  for (std::size_t k = 0; k < a.size(); ++k)
    if (p[k] != alpha * a[k] + (1 - alpha) * b[k])
      throw std::invalid_argument("prior not on the grid segment");
  return alpha;
}

}  // namespace

Rational v1(const GameFamily& family, const BeliefDistribution& dist) {
  if (dist.atoms.front().size() != family.num_states())
    throw std::invalid_argument("v1: atom dimension mismatch");

  lp::Model<Rational> model;
  std::vector<int> y(family.cols());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = model.add_var(Rational(0));
  {
    std::vector<std::pair<int, Rational>> terms;
    for (int j : y) terms.push_back({j, Rational(1)});
    model.add_row(terms, lp::Cmp::EQ, Rational(1));
  }
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist.weights[s] == 0) continue;
    const RMat m = expected_matrix(family, dist.atoms[s]);
    const int guarantee = model.add_free_var(dist.weights[s]);
    for (std::size_t i = 0; i < family.rows(); ++i) {
      std::vector<std::pair<int, Rational>> terms;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (m[i][j] != 0) terms.push_back({y[j], m[i][j]});
      terms.push_back({guarantee, Rational(-1)});
      model.add_row(terms, lp::Cmp::LE, Rational(0));
    }
  }
  auto res = model.minimize();
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("v1: unexpected LP status");
  return res.objective;
}

double v1_numeric(const GameFamily& family,
                  const std::vector<std::vector<double>>& atom_beliefs,
                  const std::vector<double>& weights) {
  if (atom_beliefs.empty() || atom_beliefs.size() != weights.size())
    throw std::invalid_argument("v1_numeric: atom/weight count mismatch");

  std::vector<std::vector<std::vector<double>>> payoff;
  payoff.reserve(family.num_states());
  for (std::size_t k = 0; k < family.num_states(); ++k)
    payoff.push_back(matrix_to_double(family.payoff(k)));

  lp::Model<double> model;
  std::vector<int> y(family.cols());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = model.add_var(0.0);
  {
    std::vector<std::pair<int, double>> terms;
    for (int j : y) terms.push_back({j, 1.0});
    model.add_row(terms, lp::Cmp::EQ, 1.0);
  }
  for (std::size_t s = 0; s < atom_beliefs.size(); ++s) {
    if (weights[s] < 0.0)
      throw std::invalid_argument("v1_numeric: negative weight");
    if (weights[s] == 0.0) continue;
    const std::vector<double>& p = atom_beliefs[s];
    if (p.size() != family.num_states())
      throw std::invalid_argument("v1_numeric: atom dimension mismatch");
    const int guarantee = model.add_free_var(weights[s]);
    for (std::size_t i = 0; i < family.rows(); ++i) {
      std::vector<std::pair<int, double>> terms;
      for (std::size_t j = 0; j < y.size(); ++j) {
        double entry = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k)
          entry += p[k] * payoff[k][i][j];
        if (entry != 0.0) terms.push_back({y[j], entry});
      }
      terms.push_back({guarantee, -1.0});
      model.add_row(terms, lp::Cmp::LE, 0.0);
    }
  }
  auto res = model.minimize();
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("v1_numeric: unexpected LP status");
  return res.objective;
}

ValueGrid ValueGrid::uniform(Segment segment, std::size_t grid_size) {
  if (grid_size < 2)
    throw std::invalid_argument("ValueGrid: grid needs at least 2 points");
  ValueGrid grid{std::move(segment), {}, {}};
  grid.alphas.reserve(grid_size);
  for (std::size_t t = 0; t < grid_size; ++t)
    grid.alphas.push_back(Rational(t) / Rational(grid_size - 1));
  grid.values.assign(grid_size, 0.0);
  return grid;
}

double shapley_T_grid_alpha(const GameFamily& family, const ValueGrid& f,
                            const Rational& alpha) {
  if (alpha < 0 || alpha > 1)
    throw std::invalid_argument("grid operator: alpha outside [0, 1]");
  if (f.alphas.size() != f.values.size())
    throw std::invalid_argument("grid operator: malformed grid");
  const MatrixSet<double> mats = grid_matrices(family, f.segment, f.alphas);
  std::vector<double> alphas_d;
  alphas_d.reserve(f.alphas.size());
  for (const Rational& a : f.alphas) alphas_d.push_back(to_double(a));
  return t_grid_optimum<double>(mats, alphas_d, f.values, to_double(alpha));
}

double shapley_T_grid(const GameFamily& family, const ValueGrid& f,
                      const Belief& p) {
  return shapley_T_grid_alpha(family, f, segment_coordinate(f.segment, p));
}

double shapley_T_grid_minform(const GameFamily& family, const ValueGrid& f,
                              const Belief& p) {
  const std::size_t states = family.num_states();
  if (p.size() != states)
    throw std::invalid_argument("grid operator: prior dimension mismatch");

  lp::Model<double> model;
  std::vector<int> y(family.cols());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = model.add_var(0.0);
  std::vector<int> lambda(states);
  for (std::size_t k = 0; k < states; ++k)
    lambda[k] = model.add_free_var(to_double(p[k]));
  const int mu = model.add_free_var(1.0);
  {
    std::vector<std::pair<int, double>> terms;
    for (int j : y) terms.push_back({j, 1.0});
    model.add_row(terms, lp::Cmp::EQ, 1.0);
  }
  for (std::size_t s = 0; s < f.alphas.size(); ++s) {
    const Belief atom = f.segment.at(f.alphas[s]);
    const auto m = matrix_to_double(expected_matrix(family, atom));
    for (std::size_t i = 0; i < family.rows(); ++i) {
      std::vector<std::pair<int, double>> terms;
      terms.push_back({mu, 1.0});
      for (std::size_t k = 0; k < states; ++k)
        terms.push_back({lambda[k], to_double(atom[k])});
      for (std::size_t j = 0; j < y.size(); ++j)
        if (m[i][j] != 0.0) terms.push_back({y[j], -m[i][j]});
      model.add_row(terms, lp::Cmp::GE, f.values[s]);
    }
  }
  auto res = model.minimize();
  if (res.status == lp::Status::Infeasible)
    throw std::invalid_argument(
        "grid operator: prior outside the grid's hull");
  if (res.status != lp::Status::Optimal)
    throw std::logic_error("grid operator: unexpected LP status");
  return res.objective;
}

Rational shapley_T_grid_exact(const GameFamily& family,
                              const Segment& segment,
                              const std::vector<Rational>& alphas,
                              const RVec& f, const Rational& alpha_p) {
  if (alphas.empty() || alphas.size() != f.size())
    throw std::invalid_argument("grid operator: malformed exact grid");
  MatrixSet<Rational> mats;
  mats.reserve(alphas.size());
  for (const Rational& alpha : alphas)
    mats.push_back(expected_matrix(family, segment.at(alpha)));
  return t_grid_optimum<Rational>(mats, alphas, f, alpha_p);
}

ValueCurve value_curve_on_segment(const GameFamily& family,
                                  const Segment& segment,
                                  const Rational& alpha_p, int n_max,
                                  std::size_t grid_size) {
  if (n_max < 1)
    throw std::invalid_argument("value_curve: n_max must be >= 1");
  if (grid_size < 2)
    throw std::invalid_argument("value_curve: grid needs at least 2 points");
  if (alpha_p < 0 || alpha_p > 1)
    throw std::invalid_argument("value_curve: prior outside the segment");
  const Rational scaled = alpha_p * Rational(grid_size - 1);
  if (denominator(scaled) != 1)
    throw std::invalid_argument(
        "value_curve: grid too coarse to contain the prior");

  ValueCurve curve{segment, {}, 0, {}, {}, {}, grid_size, true};
  curve.prior_index = static_cast<std::size_t>(numerator(scaled));
  curve.alphas.reserve(grid_size);
  for (std::size_t t = 0; t < grid_size; ++t)
    curve.alphas.push_back(Rational(t) / Rational(grid_size - 1));

  const MatrixSet<double> mats = grid_matrices(family, segment, curve.alphas);
  std::vector<double> alphas_d;
  alphas_d.reserve(grid_size);
  for (const Rational& a : curve.alphas) alphas_d.push_back(to_double(a));

  curve.grid_values.push_back(std::vector<double>(grid_size, 0.0));
  curve.values.push_back(0.0);
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<double>& prev = curve.grid_values.back();
    std::vector<double> next(grid_size);
    StageStats stats;
    for (std::size_t t = 0; t < grid_size; ++t) {
      next[t] = t_grid_optimum<double>(mats, alphas_d, prev, alphas_d[t]);
      ++stats.lp_solves;
    }
    for (std::size_t t = 0; t < grid_size; ++t)
      stats.max_increase = std::max(stats.max_increase, next[t] - prev[t]);
    curve.values.push_back(next[curve.prior_index]);
    curve.grid_values.push_back(std::move(next));
    curve.stats.push_back(stats);
  }
  return curve;
}

ValueCurve value_curve(const GameFamily& family, const Belief& p, int n_max,
                       std::size_t grid_size) {
  if (family.num_states() != 2)
    throw std::invalid_argument(
        "value_curve: more than two states needs an explicit segment");
  const Segment segment = full_simplex_segment();
  return value_curve_on_segment(family, segment,
                                segment_coordinate(segment, p), n_max,
                                grid_size);
}

OperatorPropertyReport check_operator_properties(const GameFamily& family,
                                                 std::size_t grid_size,
                                                 std::size_t trials,
                                                 std::uint64_t seed) {
  if (family.num_states() != 2)
    throw std::invalid_argument(
        "check_operator_properties: two-state families only");
  if (grid_size < 2 || trials < 1)
    throw std::invalid_argument("check_operator_properties: bad parameters");

  const Segment segment = full_simplex_segment();
  std::vector<Rational> alphas;
  alphas.reserve(grid_size);
  for (std::size_t t = 0; t < grid_size; ++t)
    alphas.push_back(Rational(t) / Rational(grid_size - 1));
  const MatrixSet<double> mats = grid_matrices(family, segment, alphas);
  std::vector<double> alphas_d;
  alphas_d.reserve(grid_size);
  for (const Rational& a : alphas) alphas_d.push_back(to_double(a));

  OperatorPropertyReport report;
  report.grid_size = grid_size;
  report.trials = trials;
  report.seed = seed;
  report.monotone_worst = 0.0;
  report.increasing_worst = 0.0;

  const double scale = to_double(lipschitz_seminorm(family)) + 1.0;
  Rng rng(seed);
  bool first = true;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<double> f(grid_size), g(grid_size);
    for (std::size_t t = 0; t < grid_size; ++t) {
      f[t] = scale * rng.unit();
      g[t] = f[t] - scale * rng.unit();
    }
    for (std::size_t t = 0; t < grid_size; ++t) {
      const double tf = t_grid_optimum<double>(mats, alphas_d, f, alphas_d[t]);
      const double tg = t_grid_optimum<double>(mats, alphas_d, g, alphas_d[t]);
      const double mono = tf - tg;
      const double incr = tf - f[t];
      if (first) {
        report.monotone_worst = mono;
        report.increasing_worst = incr;
        first = false;
      } else {
        report.monotone_worst = std::min(report.monotone_worst, mono);
        report.increasing_worst = std::min(report.increasing_worst, incr);
      }
    }
  }

  // Invariant-function chain: a piecewise certificate yields regions,
  // the regions yield h, and every DP stage must stay below h.
  const PiecewiseResult piecewise =
      detect_piecewise(family, segment, dyadic_unit(12));
  if (const auto* cert = std::get_if<PiecewiseCertificate>(&piecewise)) {
    const std::vector<Region> regions =
        regions_from_strategies(family, cert->strategies);
    report.h_checked = true;
    report.h_stages = 20;
    ValueCurve curve = value_curve_on_segment(
        family, segment, Rational(0), report.h_stages, grid_size);
    bool first_h = true;
    for (std::size_t t = 0; t < grid_size; ++t) {
      const double h =
          to_double(invariant_h(family, regions, segment.at(alphas[t])));
      for (int n = 1; n <= report.h_stages; ++n) {
        const double slack = h - curve.grid_values[n][t];
        if (first_h) {
          report.h_worst_slack = slack;
          first_h = false;
        } else {
          report.h_worst_slack = std::min(report.h_worst_slack, slack);
        }
      }
    }
  }
  return report;
}

}  // namespace repval
