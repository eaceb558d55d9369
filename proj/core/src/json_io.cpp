#include "repval/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace repval {

namespace {

Json rvec_to_json(const RVec& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(to_string(r));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Rational entry_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (r) return *r;
    throw std::invalid_argument("game json: unparsable rational \"" +
                                j.get<std::string>() + "\"");
  }
  // Floats are rejected rather than rounded; exactness is part of the
  // wire contract.
  throw std::invalid_argument("game json: payoff entries must be integers "
                              "or rational strings");
}

}  // namespace

Json game_to_json(const GameFamily& family) {
  Json j;
  j["states"] = family.states();
  j["rows"] = family.rows();
  j["cols"] = family.cols();
  Json payoffs = Json::object();
  for (std::size_t k = 0; k < family.num_states(); ++k) {
    Json matrix = Json::array();
    for (const RVec& row : family.payoff(k)) matrix.push_back(rvec_to_json(row));
    payoffs[family.state_label(k)] = std::move(matrix);
  }
  j["payoffs"] = std::move(payoffs);
  return j;
}

GameFamily game_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("game json: not an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "states" && key != "rows" && key != "cols" &&
        key != "payoffs")
      throw std::invalid_argument("game json: unknown key \"" + key + "\"");
  }
  if (!j.contains("states") || !j["states"].is_array())
    throw std::invalid_argument("game json: missing states array");
  if (!j.contains("rows") || !j["rows"].is_number_integer())
    throw std::invalid_argument("game json: missing integer rows");
  if (!j.contains("cols") || !j["cols"].is_number_integer())
    throw std::invalid_argument("game json: missing integer cols");
  if (!j.contains("payoffs") || !j["payoffs"].is_object())
    throw std::invalid_argument("game json: missing payoffs object");

  std::vector<std::string> states;
  for (const Json& s : j["states"]) {
    if (!s.is_string())
      throw std::invalid_argument("game json: state names must be strings");
    states.push_back(s.get<std::string>());
  }
  const long long rows_signed = j["rows"].get<long long>();
  const long long cols_signed = j["cols"].get<long long>();
  if (rows_signed < 1 || cols_signed < 1)
    throw std::invalid_argument("game json: rows and cols must be >= 1");
  const auto rows = static_cast<std::size_t>(rows_signed);
  const auto cols = static_cast<std::size_t>(cols_signed);

  if (j["payoffs"].size() != states.size())
    throw std::invalid_argument(
        "game json: payoffs must have one matrix per state");
  std::vector<RMat> payoffs;
  for (const std::string& state : states) {
    if (!j["payoffs"].contains(state))
      throw std::invalid_argument("game json: missing payoffs for state \"" +
                                  state + "\"");
    const Json& matrix = j["payoffs"][state];
    if (!matrix.is_array() || matrix.size() != rows)
      throw std::invalid_argument("game json: matrix for state \"" + state +
                                  "\" must have `rows` rows");
    RMat m;
    for (const Json& row : matrix) {
      if (!row.is_array() || row.size() != cols)
        throw std::invalid_argument("game json: row length mismatch in "
                                    "state \"" + state + "\"");
      RVec r;
      for (const Json& entry : row) r.push_back(entry_from_json(entry));
      m.push_back(std::move(r));
    }
    payoffs.push_back(std::move(m));
  }
  return GameFamily::make(std::move(states), rows, cols, std::move(payoffs));
}

GameFamily load_game_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("game json: parse error in " + path + ": " +
                                e.what());
  }
  return game_from_json(j);
}

void save_game_json(const GameFamily& family, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file: " + path);
  out << game_to_json(family).dump(2) << '\n';
}

Json to_json(const Belief& p) { return rvec_to_json(p.weights); }

Json to_json(const MixedAction& x) { return rvec_to_json(x.weights); }

Json to_json(const MatrixGameSolution& sol) {
  Json j;
  j["value"] = to_string(sol.value);
  j["row_optimal"] = to_json(sol.row_optimal);
  j["col_optimal"] = to_json(sol.col_optimal);
  return j;
}

Json to_json(const OptimalSetBounds& bounds) {
  Json j;
  j["lower"] = rvec_to_json(bounds.lower);
  j["upper"] = rvec_to_json(bounds.upper);
  j["singleton"] = bounds.singleton();
  return j;
}

Json to_json(const AlmostFairReport& report) {
  Json j;
  j["fully_certified"] = report.fully_certified;
  Json certified = Json::array();
  for (const CertifiedInterval& iv : report.certified) {
    Json e;
    e["a"] = to_string(iv.a);
    e["b"] = to_string(iv.b);
    e["x"] = to_json(iv.witness.x);
    e["y"] = to_json(iv.witness.y);
    certified.push_back(std::move(e));
  }
  j["certified"] = std::move(certified);
  Json zeros = Json::array();
  for (const Rational& alpha : report.sampled_zero_points)
    zeros.push_back(to_string(alpha));
  j["sampled_zero_points"] = std::move(zeros);
  Json violations = Json::array();
  for (const SampledViolation& v : report.violations) {
    Json e;
    e["alpha"] = to_string(v.alpha);
    e["u"] = to_string(v.u);
    violations.push_back(std::move(e));
  }
  j["violations"] = std::move(violations);
  j["lipschitz_rate"] = to_string(report.lipschitz_rate);
  j["epsilon_bound"] = to_string(report.epsilon_bound);
  return j;
}

Json to_json(const BreakpointReport& report) {
  Json intervals = Json::array();
  for (const BreakpointInterval& iv : report.intervals) {
    Json e;
    e["a"] = to_string(iv.a);
    e["b"] = to_string(iv.b);
    e["constant"] = iv.constant;
    e["unique"] = iv.unique;
    e["strategy"] = to_json(iv.strategy);
    intervals.push_back(std::move(e));
  }
  Json j;
  j["intervals"] = std::move(intervals);
  return j;
}

Json to_json(const Region& region) {
  Json j;
  j["dim"] = region.dim;
  Json rows = Json::array();
  for (const RVec& row : region.rows) rows.push_back(rvec_to_json(row));
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const PiecewiseCertificate& cert) {
  Json j;
  j["kind"] = "certificate";
  j["q"] = cert.q();
  Json strategies = Json::array();
  for (const MixedAction& y : cert.strategies) strategies.push_back(to_json(y));
  j["strategies"] = std::move(strategies);
  Json intervals = Json::array();
  for (const CertificateInterval& iv : cert.intervals) {
    Json e;
    e["a"] = to_string(iv.a);
    e["b"] = to_string(iv.b);
    e["strategy_index"] = iv.strategy_index;
    intervals.push_back(std::move(e));
  }
  j["intervals"] = std::move(intervals);
  return j;
}

Json to_json(const NonPiecewiseEvidence& evidence) {
  Json j;
  j["kind"] = "evidence";
  j["a"] = to_string(evidence.a);
  j["b"] = to_string(evidence.b);
  j["y_a"] = to_json(evidence.y_a);
  j["y_b"] = to_json(evidence.y_b);
  j["strategy_gap"] = to_string(evidence.strategy_gap);
  return j;
}

Json to_json(const PiecewiseInconclusive& inconclusive) {
  Json j;
  j["kind"] = "inconclusive";
  j["a"] = to_string(inconclusive.a);
  j["b"] = to_string(inconclusive.b);
  j["reason"] = inconclusive.reason;
  return j;
}

Json to_json(const PiecewiseResult& result) {
  return std::visit([](const auto& r) { return to_json(r); }, result);
}

Json to_json(const CoverReport& report) {
  Json j;
  j["mode"] = report.mode;
  j["covered"] = report.covered;
  j["samples"] = report.samples;
  j["uncovered_witness"] = report.uncovered_witness
                               ? to_json(*report.uncovered_witness)
                               : Json(nullptr);
  return j;
}

Json to_json(const RevelationConstants& constants) {
  Json j;
  j["c_a"] = to_string(constants.c_a);
  j["c"] = constants.c ? Json(*constants.c) : Json(nullptr);
  j["c_prime"] = constants.c_prime ? Json(*constants.c_prime) : Json(nullptr);
  j["non_unique_alpha"] = constants.non_unique_alpha
                              ? Json(to_string(*constants.non_unique_alpha))
                              : Json(nullptr);
  j["samples"] = constants.samples;
  j["seed"] = constants.seed;
  return j;
}

Json to_json(const ValueCurve& curve) {
  Json j;
  j["segment"] = Json{{"p_prime", to_json(curve.segment.p_prime)},
                      {"p_double_prime", to_json(curve.segment.p_double_prime)}};
  j["grid_size"] = curve.grid_size;
  j["alpha_prior"] = to_string(curve.alphas[curve.prior_index]);
  j["lower_bound_flag"] = curve.lower_bound_flag;
  j["values"] = curve.values;
  Json stats = Json::array();
  for (const StageStats& s : curve.stats) {
    Json e;
    e["lp_solves"] = s.lp_solves;
    e["max_increase"] = s.max_increase;
    stats.push_back(std::move(e));
  }
  j["stats"] = std::move(stats);
  return j;
}

Json to_json(const OperatorPropertyReport& report) {
  Json j;
  j["grid_size"] = report.grid_size;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["monotone_worst"] = report.monotone_worst;
  j["increasing_worst"] = report.increasing_worst;
  j["h_checked"] = report.h_checked;
  j["h_stages"] = report.h_stages;
  j["h_worst_slack"] = report.h_worst_slack;
  return j;
}

Json to_json(const WalkBound& bound) {
  Json j;
  j["n"] = bound.n;
  j["threshold"] = bound.threshold;
  j["step"] = bound.step;
  j["lower_bound"] = bound.lower_bound;
  j["per_sqrt_n"] = bound.per_sqrt_n;
  j["survival"] = to_string(bound.survival);
  j["survival_numeric"] = to_double(bound.survival);
  return j;
}

Json to_json(const WalkSimulation& sim) {
  Json j;
  j["n"] = sim.n;
  j["trials"] = sim.trials;
  j["seed"] = sim.seed;
  j["estimate"] = sim.estimate;
  j["standard_error"] = sim.standard_error;
  return j;
}

std::string value_curve_csv(const ValueCurve& curve) {
  std::string out = "N,V_N,grid_size,lower_bound_flag\n";
  for (std::size_t n = 0; n < curve.values.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += format_double(curve.values[n]);
    out += ',';
    out += std::to_string(curve.grid_size);
    out += ',';
    out += curve.lower_bound_flag ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string walk_trace_csv(const WalkSimulation& sim) {
  std::string out = "stage,z,alpha,absorbed,contribution\n";
  for (const WalkTraceRow& row : sim.sample_trace) {
    out += std::to_string(row.stage);
    out += ',';
    out += std::to_string(row.z);
    out += ',';
    out += format_double(row.alpha);
    out += ',';
    out += row.absorbed ? '1' : '0';
    out += ',';
    out += format_double(row.contribution);
    out += '\n';
  }
  return out;
}

}  // namespace repval
