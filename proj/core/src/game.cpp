#include "repval/game.hpp"

#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace repval {

namespace {

void check_distribution(const RVec& w, const char* what) {
  if (w.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  Rational total(0);
  for (const Rational& x : w) {
    if (x < 0)
      throw std::invalid_argument(std::string(what) + ": negative weight");
    total += x;
  }
  if (total != 1)
    throw std::invalid_argument(std::string(what) + ": weights sum to " +
                                to_string(total) + ", expected 1");
}

RVec dirac_vec(std::size_t k, std::size_t size) {
  if (k >= size) throw std::out_of_range("dirac: index out of range");
  RVec w(size, Rational(0));
  w[k] = 1;
  return w;
}

}  // namespace

Belief::Belief(RVec w) : weights(std::move(w)) {
  check_distribution(weights, "Belief");
}

MixedAction::MixedAction(RVec w) : weights(std::move(w)) {
  check_distribution(weights, "MixedAction");
}

Belief dirac_belief(std::size_t k, std::size_t size) {
  return Belief(dirac_vec(k, size));
}

MixedAction dirac_action(std::size_t j, std::size_t size) {
  return MixedAction(dirac_vec(j, size));
}

Segment::Segment(Belief prime, Belief double_prime)
    : p_prime(std::move(prime)), p_double_prime(std::move(double_prime)) {
  if (p_prime.size() != p_double_prime.size())
    throw std::invalid_argument("Segment: endpoint dimensions differ");
  if (p_prime == p_double_prime)
    throw std::invalid_argument("Segment: endpoints coincide");
}

Belief Segment::at(const Rational& alpha) const {
  if (alpha < 0 || alpha > 1)
    throw std::invalid_argument("Segment::at: alpha outside [0,1]");
  RVec w(p_prime.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    w[k] = alpha * p_prime[k] + (1 - alpha) * p_double_prime[k];
  return Belief(std::move(w));
}

Segment full_simplex_segment() {
  return Segment(dirac_belief(1, 2), dirac_belief(0, 2));
}

GameFamily GameFamily::make(std::vector<std::string> states, std::size_t rows,
                            std::size_t cols, std::vector<RMat> payoffs) {
  if (states.empty()) throw std::invalid_argument("GameFamily: no states");
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("GameFamily: empty action set");
  if (payoffs.size() != states.size())
    throw std::invalid_argument("GameFamily: one matrix per state required");
  std::unordered_set<std::string> seen;
  for (const std::string& s : states)
    if (!seen.insert(s).second)
      throw std::invalid_argument("GameFamily: duplicate state label " + s);
  for (const RMat& m : payoffs) {
    if (m.size() != rows)
      throw std::invalid_argument("GameFamily: row count mismatch");
    for (const RVec& r : m)
      if (r.size() != cols)
        throw std::invalid_argument("GameFamily: column count mismatch");
  }
  GameFamily f;
  f.states_ = std::move(states);
  f.rows_ = rows;
  f.cols_ = cols;
  f.payoffs_ = std::move(payoffs);
  return f;
}

GameFamily make_zamir() {
  RMat a0 = {{Rational(3), Rational(-1)}, {Rational(-3), Rational(1)}};
  RMat a1 = {{Rational(2), Rational(-2)}, {Rational(-2), Rational(2)}};
  return GameFamily::make({"0", "1"}, 2, 2, {std::move(a0), std::move(a1)});
}

GameFamily make_dk(const Rational& alpha) {
  if (alpha < 0 || alpha > 1)
    throw std::invalid_argument("make_dk: alpha outside [0,1]");
  const Rational s = 1 - alpha;
  RMat a0 = {{Rational(1), Rational(0)}, {Rational(0), -s}};
  RMat a1 = {{Rational(-1), Rational(0)}, {Rational(0), s}};
  return GameFamily::make({"0", "1"}, 2, 2, {std::move(a0), std::move(a1)});
}

GameFamily make_market(int m) {
  if (m < 1) throw std::invalid_argument("make_market: m must be >= 1");
  if (m > 1024)
    throw std::invalid_argument("make_market: m above the 1024 size guard");
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  std::vector<RMat> payoffs;
  for (int k = 0; k <= 1; ++k) {
    RMat a(n, RVec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const int sgn = i == j ? 0 : (i > j ? 1 : -1);
        const Rational top(BigInt(std::max(i, j)), BigInt(m));
        a[i][j] = sgn * (Rational(k) - top);
      }
    }
    payoffs.push_back(std::move(a));
  }
  return GameFamily::make({"0", "1"}, n, n, std::move(payoffs));
}

std::optional<GameFamily> parse_builtin(std::string_view spec) {
  std::string_view name = spec;
  std::string_view params;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    params = spec.substr(colon + 1);
  }
  try {
    if (name == "zamir") {
      if (!params.empty()) return std::nullopt;
      return make_zamir();
    }
    if (name == "dk") {
      constexpr std::string_view kKey = "alpha=";
      if (params.substr(0, kKey.size()) != kKey) return std::nullopt;
      auto alpha = parse_rational(params.substr(kKey.size()));
      if (!alpha || *alpha < 0 || *alpha > 1) return std::nullopt;
      return make_dk(*alpha);
    }
    if (name == "market") {
      constexpr std::string_view kKey = "m=";
      if (params.substr(0, kKey.size()) != kKey) return std::nullopt;
      auto m = parse_rational(params.substr(kKey.size()));
      if (!m || boost::multiprecision::denominator(*m) != 1) return std::nullopt;
      const BigInt num = boost::multiprecision::numerator(*m);
      if (num < 1 || num > 1024) return std::nullopt;
      return make_market(num.convert_to<int>());
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return std::nullopt;
}

RMat expected_matrix(const GameFamily& family, const Belief& p) {
  if (p.size() != family.num_states())
    throw std::invalid_argument("expected_matrix: belief dimension mismatch");
  RMat out(family.rows(), RVec(family.cols(), Rational(0)));
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    if (p[k] == 0) continue;
    const RMat& a = family.payoff(k);
    for (std::size_t i = 0; i < family.rows(); ++i)
      for (std::size_t j = 0; j < family.cols(); ++j)
        out[i][j] += p[k] * a[i][j];
  }
  return out;
}

Rational lipschitz_seminorm(const GameFamily& family) {
  Rational best(0);
  for (std::size_t k = 0; k < family.num_states(); ++k)
    for (std::size_t l = k + 1; l < family.num_states(); ++l) {
      const Rational d =
          matrix_max_abs_diff(family.payoff(k), family.payoff(l));
      if (d > best) best = d;
    }
  return best;
}

Rational matrix_max_abs_diff(const RMat& a, const RMat& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("matrix_max_abs_diff: shape mismatch");
  Rational best(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size())
      throw std::invalid_argument("matrix_max_abs_diff: shape mismatch");
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      Rational d = rational_abs(a[i][j] - b[i][j]);
      if (d > best) best = std::move(d);
    }
  }
  return best;
}

GameFamily pure_piecewise_transform(
    const GameFamily& family, const std::vector<MixedAction>& strategies) {
  for (const MixedAction& y : strategies)
    if (y.size() != family.cols())
      throw std::invalid_argument(
          "pure_piecewise_transform: strategy length mismatch");
  std::vector<RMat> payoffs;
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    RMat a = family.payoff(k);
    for (std::size_t i = 0; i < family.rows(); ++i) {
      for (const MixedAction& y : strategies) {
        Rational col(0);
        for (std::size_t j = 0; j < family.cols(); ++j)
          col += y[j] * a[i][j];
        a[i].push_back(std::move(col));
      }
    }
    payoffs.push_back(std::move(a));
  }
  return GameFamily::make(family.states(), family.rows(),
                          family.cols() + strategies.size(),
                          std::move(payoffs));
}

GameFamily add_mixed_row(const GameFamily& family, const MixedAction& x) {
  if (x.size() != family.rows())
    throw std::invalid_argument("add_mixed_row: weight length mismatch");
  std::vector<RMat> payoffs;
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    RMat a = family.payoff(k);
    RVec row(family.cols(), Rational(0));
    for (std::size_t i = 0; i < family.rows(); ++i)
      for (std::size_t j = 0; j < family.cols(); ++j)
        row[j] += x[i] * a[i][j];
    a.push_back(std::move(row));
    payoffs.push_back(std::move(a));
  }
  return GameFamily::make(family.states(), family.rows() + 1, family.cols(),
                          std::move(payoffs));
}

}  // namespace repval
