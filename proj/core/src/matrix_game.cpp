#include "repval/matrix_game.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "repval/lp.hpp"

namespace repval {

namespace {

using lp::Cmp;
using lp::Model;
using lp::Status;

void check_matrix(const RMat& m, const char* what) {
  if (m.empty() || m[0].empty())
    throw std::invalid_argument(std::string(what) + ": empty matrix");
  for (const RVec& row : m)
    if (row.size() != m[0].size())
      throw std::invalid_argument(std::string(what) + ": ragged matrix");
}

RMat neg_transpose(const RMat& m) {
  RMat out(m[0].size(), RVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = -m[i][j];
  return out;
}

/// Column player's side: minimize v over y in Delta(J) with M y <= v e.
/// Returns the exact value and the lexicographically smallest optimal y.
std::pair<Rational, RVec> solve_col_side(const RMat& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  Model<Rational> model;
  std::vector<int> y(cols);
  for (int& var : y) var = model.add_var();
  const int v = model.add_free_var(Rational(1));

  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::pair<int, Rational>> terms;
    terms.reserve(cols + 1);
    for (std::size_t j = 0; j < cols; ++j) terms.emplace_back(y[j], m[i][j]);
    terms.emplace_back(v, Rational(-1));
    model.add_row(std::move(terms), Cmp::LE, Rational(0));
  }
  std::vector<std::pair<int, Rational>> simplex;
  for (int var : y) simplex.emplace_back(var, Rational(1));
  model.add_row(std::move(simplex), Cmp::EQ, Rational(1));

  const lp::Result<Rational> first = model.minimize();
  if (first.status != Status::Optimal)
    throw std::logic_error("solve_matrix_game: value LP did not solve");
  const Rational value = first.objective;

  model.add_row({{v, Rational(1)}}, Cmp::EQ, value);
  const auto point = lp::lexicographic_minimum(model, y);
  if (!point)
    throw std::logic_error("solve_matrix_game: strategy LP did not solve");
  RVec strategy(cols);
  for (std::size_t j = 0; j < cols; ++j)
    strategy[j] = (*point)[static_cast<std::size_t>(y[j])];
  return {value, std::move(strategy)};
}

Rational det(const RMat& b) {
  const std::size_t n = b.size();
  if (n == 1) return b[0][0];
  Rational total(0);
  RMat minor(n - 1, RVec(n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    if (b[0][c] == 0) continue;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor[i - 1][jj++] = b[i][j];
      }
    }
    const Rational d = det(minor);
    total += (c % 2 == 0 ? b[0][c] : -b[0][c]) * d;
  }
  return total;
}

/// adj(B)_{i,j} = (-1)^{i+j} det(B without row j and column i), so that
/// B adj(B) = det(B) I.
RMat adjugate(const RMat& b) {
  const std::size_t n = b.size();
  RMat adj(n, RVec(n));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  RMat minor(n - 1, RVec(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t ii = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::size_t jj = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == i) continue;
          minor[ii][jj++] = b[r][c];
        }
        ++ii;
      }
      const Rational d = det(minor);
      adj[i][j] = (i + j) % 2 == 0 ? d : -d;
    }
  }
  return adj;
}

std::vector<std::size_t> mask_indices(unsigned mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

}  // namespace

MatrixGameSolution solve_matrix_game(const RMat& m) {
  check_matrix(m, "solve_matrix_game");
  auto [value, col] = solve_col_side(m);
  // The row player's problem on M is the column player's on -M^T.
  auto [neg_value, row] = solve_col_side(neg_transpose(m));
  if (neg_value != -value)
    throw std::logic_error("solve_matrix_game: primal/dual value mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    Rational lhs(0);
    for (std::size_t j = 0; j < m[i].size(); ++j) lhs += m[i][j] * col[j];
    if (lhs > value)
      throw std::logic_error("solve_matrix_game: column guarantee violated");
  }
  for (std::size_t j = 0; j < m[0].size(); ++j) {
    Rational lhs(0);
    for (std::size_t i = 0; i < m.size(); ++i) lhs += row[i] * m[i][j];
    if (lhs < value)
      throw std::logic_error("solve_matrix_game: row guarantee violated");
  }
  return {std::move(value), MixedAction(std::move(row)),
          MixedAction(std::move(col))};
}

bool OptimalSetBounds::singleton() const {
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (lower[j] != upper[j]) return false;
  return true;
}

OptimalSetBounds optimal_set_bounds(const RMat& m, const Rational& value) {
  check_matrix(m, "optimal_set_bounds");
  const std::size_t cols = m[0].size();
  Model<Rational> model;
  std::vector<int> y(cols);
  for (int& var : y) var = model.add_var();
  for (const RVec& row : m) {
    std::vector<std::pair<int, Rational>> terms;
    for (std::size_t j = 0; j < cols; ++j) terms.emplace_back(y[j], row[j]);
    model.add_row(std::move(terms), Cmp::LE, value);
  }
  std::vector<std::pair<int, Rational>> simplex;
  for (int var : y) simplex.emplace_back(var, Rational(1));
  model.add_row(std::move(simplex), Cmp::EQ, Rational(1));

  if (model.minimize().status != Status::Optimal)
    throw std::invalid_argument("optimal_set_bounds: value not attained");

  OptimalSetBounds out;
  out.lower.resize(cols);
  out.upper.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    model.clear_costs();
    model.set_cost(y[j], Rational(1));
    const auto lo = model.minimize();
    const auto hi = model.maximize();
    if (lo.status != Status::Optimal || hi.status != Status::Optimal)
      throw std::logic_error("optimal_set_bounds: coordinate LP failed");
    out.lower[j] = lo.objective;
    out.upper[j] = hi.objective;
  }
  return out;
}

std::optional<MixedAction> feasible_common_strategy(const RMat& m_a,
                                                    const RMat& m_b) {
  check_matrix(m_a, "feasible_common_strategy");
  check_matrix(m_b, "feasible_common_strategy");
  if (m_a[0].size() != m_b[0].size())
    throw std::invalid_argument(
        "feasible_common_strategy: column counts differ");
  const std::size_t cols = m_a[0].size();
  Model<Rational> model;
  std::vector<int> y(cols);
  for (int& var : y) var = model.add_var();
  for (const RMat* m : {&m_a, &m_b}) {
    for (const RVec& row : *m) {
      std::vector<std::pair<int, Rational>> terms;
      for (std::size_t j = 0; j < cols; ++j) terms.emplace_back(y[j], row[j]);
      model.add_row(std::move(terms), Cmp::LE, Rational(0));
    }
  }
  std::vector<std::pair<int, Rational>> simplex;
  for (int var : y) simplex.emplace_back(var, Rational(1));
  model.add_row(std::move(simplex), Cmp::EQ, Rational(1));

  const auto point = lp::lexicographic_minimum(model, y);
  if (!point) return std::nullopt;
  RVec out(cols);
  for (std::size_t j = 0; j < cols; ++j)
    out[j] = (*point)[static_cast<std::size_t>(y[j])];
  return MixedAction(std::move(out));
}

SnowShapleyResult snow_shapley_extremes(const RMat& m) {
  check_matrix(m, "snow_shapley_extremes");
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  SnowShapleyResult result;
  if (rows > 6 || cols > 6) return result;  // complete stays false

  const Rational value = solve_matrix_game(m).value;
  std::vector<RVec> found;

  for (unsigned rmask = 1; rmask < (1u << rows); ++rmask) {
    const auto r_idx = mask_indices(rmask);
    for (unsigned cmask = 1; cmask < (1u << cols); ++cmask) {
      if (std::popcount(cmask) != std::popcount(rmask)) continue;
      const auto c_idx = mask_indices(cmask);
      const std::size_t r = r_idx.size();

      RMat sub(r, RVec(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          sub[i][j] = m[r_idx[i]][c_idx[j]];

      const RMat adj = adjugate(sub);
      Rational s(0);
      for (const RVec& row : adj)
        for (const Rational& a : row) s += a;
      if (s == 0) continue;
      if (det(sub) != value * s) continue;

      // y on the column support and x on the row support; both must be
      // distributions for the kernel to be a genuine solution pair.
      bool ok = true;
      RVec y(cols, Rational(0));
      for (std::size_t i = 0; i < r && ok; ++i) {
        Rational yi(0);
        for (std::size_t j = 0; j < r; ++j) yi += adj[i][j];
        yi /= s;
        if (yi < 0) ok = false;
        y[c_idx[i]] = std::move(yi);
      }
      RVec x(rows, Rational(0));
      for (std::size_t j = 0; j < r && ok; ++j) {
        Rational xj(0);
        for (std::size_t i = 0; i < r; ++i) xj += adj[i][j];
        xj /= s;
        if (xj < 0) ok = false;
        x[r_idx[j]] = std::move(xj);
      }
      if (!ok) continue;

      for (std::size_t i = 0; i < rows && ok; ++i) {
        Rational lhs(0);
        for (std::size_t j = 0; j < cols; ++j) lhs += m[i][j] * y[j];
        if (lhs > value) ok = false;
      }
      for (std::size_t j = 0; j < cols && ok; ++j) {
        Rational lhs(0);
        for (std::size_t i = 0; i < rows; ++i) lhs += x[i] * m[i][j];
        if (lhs < value) ok = false;
      }
      if (ok) found.push_back(std::move(y));
    }
  }

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  for (RVec& y : found) result.extremes.emplace_back(std::move(y));
  result.complete = true;
  return result;
}

GameFamily normalize_flat(const GameFamily& family) {
  std::vector<RMat> payoffs;
  payoffs.reserve(family.num_states());
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    const Rational v = solve_matrix_game(family.payoff(k)).value;
    RMat a = family.payoff(k);
    for (RVec& row : a)
      for (Rational& entry : row) entry -= v;
    payoffs.push_back(std::move(a));
  }
  return GameFamily::make(family.states(), family.rows(), family.cols(),
                          std::move(payoffs));
}

}  // namespace repval
