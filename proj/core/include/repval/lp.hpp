#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "repval/rational.hpp"

namespace repval::lp {

enum class Status { Optimal, Infeasible, Unbounded };

enum class Cmp { LE, GE, EQ };

/// Tolerances for the simplex loop. The Rational instantiation is fully
/// exact: Bland's rule from the first pivot, feasibility decided by
/// equality with zero. The double instantiation uses Dantzig pricing
/// with a Bland fallback after an iteration budget.
template <typename T>
struct ScalarPolicy;

template <>
struct ScalarPolicy<Rational> {
  static constexpr bool exact = true;
  static Rational cost_eps() { return Rational(0); }
  static Rational pivot_eps() { return Rational(0); }
  static Rational feas_eps() { return Rational(0); }
};

template <>
struct ScalarPolicy<double> {
  static constexpr bool exact = false;
  static double cost_eps() { return 1e-9; }
  static double pivot_eps() { return 1e-11; }
  static double feas_eps() { return 1e-7; }
};

template <typename T>
struct Result {
  Status status = Status::Infeasible;
  T objective{};
  std::vector<T> x;  // one entry per model variable when Optimal
};

namespace detail {

template <typename T>
struct Tableau {
  std::vector<std::vector<T>> row;  // m rows, each of length n+1 (rhs last)
  std::vector<T> z2;                // phase-2 reduced costs, length n+1
  std::vector<T> z1;                // phase-1 reduced costs, length n+1
  std::vector<int> basis;           // basic column per row
  std::size_t n = 0;                // columns excluding rhs
  std::size_t n_real = 0;           // columns before artificials

  void pivot(std::size_t prow, std::size_t pcol) {
    std::vector<T>& pr = row[prow];
    const T piv = pr[pcol];
    for (T& v : pr) v /= piv;
    pr[pcol] = T(1);
    auto eliminate = [&](std::vector<T>& r) {
      const T f = r[pcol];
      if (f == T(0)) return;
      for (std::size_t j = 0; j <= n; ++j) r[j] -= f * pr[j];
      r[pcol] = T(0);
    };
    for (std::size_t i = 0; i < row.size(); ++i)
      if (i != prow) eliminate(row[i]);
    eliminate(z2);
    eliminate(z1);
    basis[prow] = static_cast<int>(pcol);
  }
};

/// Runs the simplex loop against one reduced-cost row. Only columns
/// below `eligible_n` may enter (phase 2 freezes artificials this way).
template <typename T>
Status price_loop(Tableau<T>& tb, std::vector<T>& z, std::size_t eligible_n) {
  const T ceps = ScalarPolicy<T>::cost_eps();
  const T peps = ScalarPolicy<T>::pivot_eps();
  const std::size_t m = tb.row.size();
  bool bland = ScalarPolicy<T>::exact;
  const std::size_t dantzig_budget = 50 * (m + tb.n) + 5000;
  const std::size_t hard_budget = 200 * (m + tb.n) * (m + 2) + 200000;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > hard_budget)
      throw std::runtime_error("lp: simplex iteration budget exceeded");
    if (!bland && iter > dantzig_budget) bland = true;

    std::ptrdiff_t pcol = -1;
    if (bland) {
      for (std::size_t j = 0; j < eligible_n; ++j)
        if (z[j] < -ceps) {
          pcol = static_cast<std::ptrdiff_t>(j);
          break;
        }
    } else {
      T best = -ceps;
      for (std::size_t j = 0; j < eligible_n; ++j)
        if (z[j] < best) {
          best = z[j];
          pcol = static_cast<std::ptrdiff_t>(j);
        }
    }
    if (pcol < 0) return Status::Optimal;
    const std::size_t jc = static_cast<std::size_t>(pcol);

    std::ptrdiff_t prow = -1;
    T best_ratio{};
    for (std::size_t i = 0; i < m; ++i) {
      const T a = tb.row[i][jc];
      if (!(a > peps)) continue;
      const T ratio = tb.row[i][tb.n] / a;
      if (prow < 0 || ratio < best_ratio) {
        prow = static_cast<std::ptrdiff_t>(i);
        best_ratio = ratio;
      } else if (ratio == best_ratio) {
        // Bland: leaving variable of smallest index (anti-cycling).
        // Float path: largest pivot element for stability.
        const std::size_t ip = static_cast<std::size_t>(prow);
        const bool take = bland ? tb.basis[i] < tb.basis[ip]
                                : a > tb.row[ip][jc];
        if (take) prow = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (prow < 0) return Status::Unbounded;
    tb.pivot(static_cast<std::size_t>(prow), jc);
  }
}

/// Two-phase simplex for: minimize c.x subject to A x = b, x >= 0.
/// Rows with negative b are negated up front. Rows left dependent after
/// phase 1 are dropped.
template <typename T>
Result<T> solve_standard(std::vector<std::vector<T>> a, std::vector<T> b,
                         const std::vector<T>& c) {
  const std::size_t m = a.size();
  const std::size_t n_real = c.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n_real)
      throw std::invalid_argument("lp: ragged constraint matrix");
    if (b[i] < T(0)) {
      for (T& v : a[i]) v = -v;
      b[i] = -b[i];
    }
  }

  // Columns that are already unit vectors (single positive entry) seed
  // the basis so most rows need no artificial variable.
  std::vector<int> cover(m, -1);
  for (std::size_t j = 0; j < n_real; ++j) {
    std::ptrdiff_t nz = -1;
    bool unit = true;
    for (std::size_t i = 0; i < m && unit; ++i) {
      if (a[i][j] == T(0)) continue;
      if (nz >= 0)
        unit = false;
      else
        nz = static_cast<std::ptrdiff_t>(i);
    }
    if (!unit || nz < 0) continue;
    const std::size_t i = static_cast<std::size_t>(nz);
    if (cover[i] < 0 && a[i][j] > T(0)) cover[i] = static_cast<int>(j);
  }

  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (cover[i] < 0) ++n_art;

  Tableau<T> tb;
  tb.n_real = n_real;
  tb.n = n_real + n_art;
  tb.basis.assign(m, -1);
  tb.row.assign(m, std::vector<T>(tb.n + 1, T(0)));
  std::size_t next_art = n_real;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n_real; ++j) tb.row[i][j] = a[i][j];
    tb.row[i][tb.n] = b[i];
    if (cover[i] < 0) {
      tb.row[i][next_art] = T(1);
      tb.basis[i] = static_cast<int>(next_art);
      ++next_art;
    }
  }
  tb.z2.assign(tb.n + 1, T(0));
  for (std::size_t j = 0; j < n_real; ++j) tb.z2[j] = c[j];
  tb.z1.assign(tb.n + 1, T(0));
  for (std::size_t j = n_real; j < tb.n; ++j) tb.z1[j] = T(1);

  // Canonicalize: make every basic column zero in both cost rows.
  for (std::size_t i = 0; i < m; ++i) {
    if (cover[i] >= 0)
      tb.pivot(i, static_cast<std::size_t>(cover[i]));
    else
      for (std::size_t j = 0; j <= tb.n; ++j) tb.z1[j] -= tb.row[i][j];
  }

  Result<T> res;
  if (n_art > 0) {
    const Status s1 = price_loop(tb, tb.z1, tb.n);
    if (s1 == Status::Unbounded)
      throw std::runtime_error("lp: phase-1 objective unbounded");
    if (-tb.z1[tb.n] > ScalarPolicy<T>::feas_eps()) {
      res.status = Status::Infeasible;
      return res;
    }
    // Drive leftover artificials out of the basis; rows where no real
    // column remains are dependent and can be dropped.
    for (std::size_t i = tb.row.size(); i-- > 0;) {
      if (tb.basis[i] < static_cast<int>(n_real)) continue;
      std::ptrdiff_t jbest = -1;
      T abest{};
      for (std::size_t j = 0; j < n_real; ++j) {
        const T mag =
            tb.row[i][j] < T(0) ? T(-tb.row[i][j]) : tb.row[i][j];
        if (mag > ScalarPolicy<T>::pivot_eps() &&
            (jbest < 0 || mag > abest)) {
          jbest = static_cast<std::ptrdiff_t>(j);
          abest = mag;
        }
      }
      if (jbest >= 0) {
        tb.pivot(i, static_cast<std::size_t>(jbest));
      } else {
        tb.row.erase(tb.row.begin() + static_cast<std::ptrdiff_t>(i));
        tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  const Status s2 = price_loop(tb, tb.z2, n_real);
  if (s2 == Status::Unbounded) {
    res.status = Status::Unbounded;
    return res;
  }
  res.status = Status::Optimal;
  res.objective = -tb.z2[tb.n];
  res.x.assign(n_real, T(0));
  for (std::size_t i = 0; i < tb.row.size(); ++i)
    if (tb.basis[i] >= 0 && tb.basis[i] < static_cast<int>(n_real))
      res.x[static_cast<std::size_t>(tb.basis[i])] = tb.row[i][tb.n];
  return res;
}

}  // namespace detail

/// Small dense LP model. Variables are nonnegative unless added with
/// add_free_var; rows accept <=, >=, or =. Intended problem sizes are a
/// few hundred columns by a few dozen rows at most.
template <typename T>
class Model {
 public:
  int add_var(T cost = T(0)) {
    vars_.push_back({std::move(cost), false});
    return static_cast<int>(vars_.size()) - 1;
  }

  int add_free_var(T cost = T(0)) {
    vars_.push_back({std::move(cost), true});
    return static_cast<int>(vars_.size()) - 1;
  }

  void set_cost(int var, T cost) { vars_.at(var).cost = std::move(cost); }

  void clear_costs() {
    for (Var& v : vars_) v.cost = T(0);
  }

  /// Terms may repeat a variable; coefficients accumulate.
  void add_row(std::vector<std::pair<int, T>> terms, Cmp cmp, T rhs) {
    for (const auto& [v, coef] : terms) {
      (void)coef;
      if (v < 0 || v >= static_cast<int>(vars_.size()))
        throw std::out_of_range("lp: row references unknown variable");
    }
    rows_.push_back({std::move(terms), cmp, std::move(rhs)});
  }

  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  Result<T> minimize() const { return solve(false); }
  Result<T> maximize() const { return solve(true); }

 private:
  struct Var {
    T cost;
    bool is_free;
  };
  struct Row {
    std::vector<std::pair<int, T>> terms;
    Cmp cmp;
    T rhs;
  };

  Result<T> solve(bool flip) const {
    // Column layout: per-variable plus column (and minus column for
    // free variables), then one slack column per inequality row.
    const std::size_t nv = vars_.size();
    std::vector<std::size_t> plus_col(nv), minus_col(nv, SIZE_MAX);
    std::size_t ncol = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      plus_col[v] = ncol++;
      if (vars_[v].is_free) minus_col[v] = ncol++;
    }
    std::vector<std::size_t> slack_col(rows_.size(), SIZE_MAX);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (rows_[r].cmp != Cmp::EQ) slack_col[r] = ncol++;

    std::vector<T> c(ncol, T(0));
    for (std::size_t v = 0; v < nv; ++v) {
      const T cost = flip ? T(-vars_[v].cost) : vars_[v].cost;
      c[plus_col[v]] = cost;
      if (minus_col[v] != SIZE_MAX) c[minus_col[v]] = -cost;
    }

    std::vector<std::vector<T>> a(rows_.size(), std::vector<T>(ncol, T(0)));
    std::vector<T> b(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [v, coef] : rows_[r].terms) {
        a[r][plus_col[static_cast<std::size_t>(v)]] += coef;
        if (minus_col[static_cast<std::size_t>(v)] != SIZE_MAX)
          a[r][minus_col[static_cast<std::size_t>(v)]] -= coef;
      }
      if (slack_col[r] != SIZE_MAX)
        a[r][slack_col[r]] = rows_[r].cmp == Cmp::LE ? T(1) : T(-1);
      b[r] = rows_[r].rhs;
    }

    Result<T> raw = detail::solve_standard(std::move(a), std::move(b), c);
    Result<T> out;
    out.status = raw.status;
    if (raw.status != Status::Optimal) return out;
    out.objective = flip ? T(-raw.objective) : raw.objective;
    out.x.assign(nv, T(0));
    for (std::size_t v = 0; v < nv; ++v) {
      out.x[v] = raw.x[plus_col[v]];
      if (minus_col[v] != SIZE_MAX) out.x[v] -= raw.x[minus_col[v]];
    }
    return out;
  }

  std::vector<Var> vars_;
  std::vector<Row> rows_;
};

/// Minimizes the given variables lexicographically over the model's
/// feasible set, pinning each coordinate by an equality row as it is
/// fixed. The model is mutated. Returns the final point, or nullopt if
/// any stage fails to reach an optimum (infeasible or unbounded).
template <typename T>
std::optional<std::vector<T>> lexicographic_minimum(
    Model<T>& model, const std::vector<int>& vars) {
  model.clear_costs();
  Result<T> last = model.minimize();
  if (last.status != Status::Optimal) return std::nullopt;
  for (int v : vars) {
    model.clear_costs();
    model.set_cost(v, T(1));
    last = model.minimize();
    if (last.status != Status::Optimal) return std::nullopt;
    model.add_row({{v, T(1)}}, Cmp::EQ, last.x[static_cast<std::size_t>(v)]);
  }
  return last.x;
}

}  // namespace repval::lp
