// repval: command-line front end for the repval library.
//
// Commands:
//   nr-value     exact value and optimal strategies of the expected
//                one-shot game at a prior
//   almost-fair  interval certification that the expected game is fair
//                along a segment
//   piecewise    constant-strategy cover of a segment, or evidence that
//                none exists
//   bound        uniform value bound when a cover exists, otherwise
//                growth evidence with sampled constants and a walk bound
//   value-curve  grid lower-bound DP for the stage values, CSV output
//   walk         exact absorbed-walk lower bound plus a Monte Carlo
//                replay
//   constants    sampled growth-condition constants along a segment
//
// Reports print to stdout as JSON (value-curve prints CSV) and are
// byte-identical for identical arguments and seed. Exit codes:
// 0 success, 2 input error, 3 analysis error, 4 inconclusive analysis
// under --strict.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "repval/beliefs.hpp"
#include "repval/game.hpp"
#include "repval/json_io.hpp"
#include "repval/matrix_game.hpp"
#include "repval/nonrevealing.hpp"
#include "repval/piecewise.hpp"
#include "repval/rational.hpp"
#include "repval/recursion.hpp"
#include "repval/walk.hpp"

namespace {

using namespace repval;

// Thrown for malformed arguments, unreadable files, and other problems
// the user can fix on the command line; mapped to exit 2. Library
// exceptions thrown after input validation are analysis errors and map
// to exit 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitAnalysis = 3;
constexpr int kExitStrict = 4;

struct CommonArgs {
  std::string builtin;
  std::string game_path;
  std::string out_path;
  bool strict = false;
  int threads = 1;
};

void add_common_options(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--builtin", args.builtin,
                  "Builtin family: zamir, dk:alpha=<rational>, market:m=<int>");
  sub->add_option("--game", args.game_path, "Path to a game JSON file");
  sub->add_option("--out", args.out_path,
                  "Also write the stdout report to this file");
  sub->add_flag("--strict", args.strict,
                "Exit 4 when the analysis is inconclusive");
  sub->add_option("--threads", args.threads,
                  "Worker cap; this build runs single-threaded")
      ->check(CLI::Range(1, 4096));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

Rational parse_rational_arg(const std::string& text, const char* what) {
  auto r = parse_rational(text);
  if (!r)
    throw InputError(std::string(what) + ": expected \"a/b\" or a short " +
                     "decimal, got \"" + text + "\"");
  return *r;
}

GameFamily load_family(const CommonArgs& args) {
  if (args.builtin.empty() == args.game_path.empty())
    throw InputError("exactly one of --builtin and --game is required");
  if (!args.builtin.empty()) {
    auto family = parse_builtin(args.builtin);
    if (!family) throw InputError("unknown builtin \"" + args.builtin + "\"");
    return *family;
  }
  try {
    return load_game_json(args.game_path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

std::string source_label(const CommonArgs& args) {
  return args.builtin.empty() ? args.game_path : args.builtin;
}

/// Comma-separated weights, or for two-state games a single rational
/// meaning the weight of state 1.
Belief parse_prior(const std::string& text, std::size_t num_states) {
  std::vector<std::string> parts = split(text, ',');
  try {
    if (parts.size() == 1 && num_states == 2) {
      Rational alpha = parse_rational_arg(parts[0], "--prior");
      return Belief(RVec{Rational(1 - alpha), alpha});
    }
    if (parts.size() != num_states)
      throw InputError("--prior: expected " + std::to_string(num_states) +
                       " comma-separated weights, got " +
                       std::to_string(parts.size()));
    RVec weights;
    for (const std::string& part : parts)
      weights.push_back(parse_rational_arg(part, "--prior"));
    return Belief(std::move(weights));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--prior: ") + e.what());
  }
}

/// "w0,...,wK;v0,...,vK": two full belief weight lists. Empty text
/// selects the full two-state segment p(alpha) = (1-alpha, alpha).
Segment parse_segment(const std::string& text, std::size_t num_states) {
  if (text.empty()) {
    if (num_states == 2) return full_simplex_segment();
    throw InputError(
        "--segment is required for games with more than two states");
  }
  std::vector<std::string> sides = split(text, ';');
  if (sides.size() != 2)
    throw InputError("--segment: expected two belief lists separated by ';'");
  try {
    RVec prime, double_prime;
    for (const std::string& part : split(sides[0], ','))
      prime.push_back(parse_rational_arg(part, "--segment"));
    for (const std::string& part : split(sides[1], ','))
      double_prime.push_back(parse_rational_arg(part, "--segment"));
    if (prime.size() != num_states || double_prime.size() != num_states)
      throw InputError("--segment: each belief needs " +
                       std::to_string(num_states) + " weights");
    return Segment(Belief(std::move(prime)), Belief(std::move(double_prime)));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--segment: ") + e.what());
  }
}

int emit_text(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write output file: " + out_path);
    out << text;
  }
  return kExitOk;
}

int emit_json(const Json& j, const std::string& out_path) {
  return emit_text(j.dump(2) + "\n", out_path);
}

/// Cover detection and the growth constants assume the expected game
/// is fair along the segment; an exact sampled violation disproves
/// that, so the dependent commands stop with an analysis error.
AlmostFairReport fairness_precheck(const GameFamily& family,
                                   const Segment& segment, int depth) {
  AlmostFairReport report = almost_fair_check(family, segment, depth);
  if (!report.violations.empty()) {
    const SampledViolation& v = report.violations.front();
    throw std::domain_error("expected game is unfair at alpha = " +
                            to_string(v.alpha) + " (u = " + to_string(v.u) +
                            "); the requested analysis needs a fair segment");
  }
  return report;
}

Json precheck_summary(const AlmostFairReport& report) {
  Json j;
  j["fully_certified"] = report.fully_certified;
  j["certified_intervals"] = report.certified.size();
  j["epsilon_bound"] = to_string(report.epsilon_bound);
  return j;
}

/// Row optima of M are the column optima of -M^T at value -val(M).
RMat negated_transpose(const RMat& m) {
  RMat out(m[0].size(), RVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[j][i] = -m[i][j];
  return out;
}

// ---------------------------------------------------------------------------
// nr-value

struct NrValueArgs {
  CommonArgs common;
  std::string prior;
};

int cmd_nr_value(const NrValueArgs& args) {
  GameFamily family = load_family(args.common);
  Belief prior = parse_prior(args.prior, family.num_states());
  RMat m = expected_matrix(family, prior);
  MatrixGameSolution sol = solve_matrix_game(m);
  OptimalSetBounds col_bounds = optimal_set_bounds(m, sol.value);
  OptimalSetBounds row_bounds =
      optimal_set_bounds(negated_transpose(m), Rational(-sol.value));
  Json j;
  j["command"] = "nr-value";
  j["source"] = source_label(args.common);
  j["prior"] = to_json(prior);
  j["value"] = to_string(sol.value);
  j["row_optimal"] = to_json(sol.row_optimal);
  j["col_optimal"] = to_json(sol.col_optimal);
  j["row_bounds"] = to_json(row_bounds);
  j["col_bounds"] = to_json(col_bounds);
  return emit_json(j, args.common.out_path);
}

// ---------------------------------------------------------------------------
// almost-fair

struct AlmostFairArgs {
  CommonArgs common;
  std::string segment;
  int depth = 10;
  bool breakpoints = false;
};

int cmd_almost_fair(const AlmostFairArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  AlmostFairReport report = almost_fair_check(family, segment, args.depth);
  Json j;
  j["command"] = "almost-fair";
  j["source"] = source_label(args.common);
  j["depth"] = args.depth;
  j["report"] = to_json(report);
  if (args.breakpoints) {
    // Breakpoint structure is meaningful only on a fair segment.
    j["breakpoints"] =
        report.violations.empty()
            ? to_json(parametric_breakpoints(family, segment, args.depth))
            : Json(nullptr);
  }
  int rc = emit_json(j, args.common.out_path);
  if (args.common.strict && !report.fully_certified) return kExitStrict;
  return rc;
}

// ---------------------------------------------------------------------------
// piecewise

struct PiecewiseArgs {
  CommonArgs common;
  std::string segment;
  std::string min_width = "1/4096";
  int depth = 10;
  std::size_t cover_resolution = 256;
  bool table = false;
};

std::string linear_form(const RVec& coeffs) {
  std::string out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (!out.empty()) out += coeffs[k] > 0 ? " + " : " - ";
    else if (coeffs[k] < 0)
      out += "-";
    Rational mag = rational_abs(coeffs[k]);
    if (mag != 1) out += to_string(mag) + "*";
    out += "p" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out + " <= 0";
}

std::string strategy_text(const MixedAction& y) {
  std::string out = "(";
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j) out += ", ";
    out += to_string(y[j]);
  }
  return out + ")";
}

std::string certificate_table(const GameFamily& family,
                              const PiecewiseCertificate& cert,
                              const std::vector<Region>& regions) {
  std::string out = "piecewise certificate: Q = " + std::to_string(cert.q()) +
                    ", bound = " + to_string(theorem1_bound(family, cert)) +
                    "\n";
  for (const CertificateInterval& iv : cert.intervals) {
    out += "interval [" + to_string(iv.a) + ", " + to_string(iv.b) + "]\n";
    out += "  strategy y" + std::to_string(iv.strategy_index) + " = " +
           strategy_text(cert.strategies[iv.strategy_index]) + "\n";
    for (const RVec& row : regions[iv.strategy_index].rows)
      out += "  region   " + linear_form(row) + "\n";
  }
  return out;
}

int cmd_piecewise(const PiecewiseArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  Rational min_width = parse_rational_arg(args.min_width, "--min-width");
  if (min_width <= 0) throw InputError("--min-width must be positive");
  AlmostFairReport fair = fairness_precheck(family, segment, args.depth);
  PiecewiseResult result = detect_piecewise(family, segment, min_width);

  Json j;
  j["command"] = "piecewise";
  j["source"] = source_label(args.common);
  j["min_width"] = to_string(min_width);
  j["almost_fair_precheck"] = precheck_summary(fair);
  j["result"] = to_json(result);
  std::string table_text;
  if (const auto* cert = std::get_if<PiecewiseCertificate>(&result)) {
    std::vector<Region> regions =
        regions_from_strategies(family, cert->strategies);
    CoverReport cover =
        family.num_states() == 2
            ? verify_cover_exact_1d(regions)
            : verify_cover_grid(regions, family.num_states(),
                                args.cover_resolution);
    j["cover"] = to_json(cover);
    j["lipschitz_seminorm"] = to_string(lipschitz_seminorm(family));
    j["bound"] = to_string(theorem1_bound(family, *cert));
    table_text = certificate_table(family, *cert, regions);
  } else {
    j["cover"] = Json(nullptr);
    j["lipschitz_seminorm"] = to_string(lipschitz_seminorm(family));
    j["bound"] = Json(nullptr);
    if (const auto* ev = std::get_if<NonPiecewiseEvidence>(&result)) {
      table_text = "no piecewise cover: strategies provably change inside [" +
                   to_string(ev->a) + ", " + to_string(ev->b) + "]\n  y(" +
                   to_string(ev->a) + ") = " + strategy_text(ev->y_a) +
                   "\n  y(" + to_string(ev->b) + ") = " +
                   strategy_text(ev->y_b) +
                   "\n  gap  = " + to_string(ev->strategy_gap) + "\n";
    } else {
      const auto& inc = std::get<PiecewiseInconclusive>(result);
      table_text = "inconclusive on [" + to_string(inc.a) + ", " +
                   to_string(inc.b) + "]: " + inc.reason + "\n";
    }
  }

  int rc = args.table ? emit_text(table_text, args.common.out_path)
                      : emit_json(j, args.common.out_path);
  if (args.common.strict &&
      std::holds_alternative<PiecewiseInconclusive>(result))
    return kExitStrict;
  return rc;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  CommonArgs common;
  std::string segment;
  std::string min_width = "1/4096";
  int depth = 10;
  int samples = 200;
  int walk_n = 64;
  std::uint64_t seed = 0;
  std::size_t cover_resolution = 256;
};

int cmd_bound(const BoundArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  Rational min_width = parse_rational_arg(args.min_width, "--min-width");
  if (min_width <= 0) throw InputError("--min-width must be positive");
  if (args.walk_n < 1) throw InputError("--n must be at least 1");
  if (args.samples < 1) throw InputError("--samples must be at least 1");
  AlmostFairReport fair = fairness_precheck(family, segment, args.depth);
  PiecewiseResult result = detect_piecewise(family, segment, min_width);

  Json j;
  j["command"] = "bound";
  j["source"] = source_label(args.common);
  j["almost_fair_precheck"] = precheck_summary(fair);
  j["lipschitz_seminorm"] = to_string(lipschitz_seminorm(family));
  j["detection"] = to_json(result);
  bool inconclusive = false;
  if (const auto* cert = std::get_if<PiecewiseCertificate>(&result)) {
    std::vector<Region> regions =
        regions_from_strategies(family, cert->strategies);
    j["mode"] = "bounded";
    j["q"] = cert->q();
    j["bound"] = to_string(theorem1_bound(family, *cert));
    j["cover"] = to_json(family.num_states() == 2
                             ? verify_cover_exact_1d(regions)
                             : verify_cover_grid(regions, family.num_states(),
                                                 args.cover_resolution));
    j["constants"] = Json(nullptr);
    j["walk"] = Json(nullptr);
  } else if (std::holds_alternative<NonPiecewiseEvidence>(result)) {
    j["mode"] = "sqrt-growth-evidence";
    j["q"] = Json(nullptr);
    j["bound"] = Json(nullptr);
    j["cover"] = Json(nullptr);
    j["constants"] = to_json(estimate_small_revelation_constants(
        family, segment, args.samples, args.seed));
    j["walk"] = to_json(walk_lower_bound_exact(family, segment, args.walk_n));
  } else {
    j["mode"] = "inconclusive";
    j["q"] = Json(nullptr);
    j["bound"] = Json(nullptr);
    j["cover"] = Json(nullptr);
    j["constants"] = Json(nullptr);
    j["walk"] = Json(nullptr);
    inconclusive = true;
  }

  int rc = emit_json(j, args.common.out_path);
  if (args.common.strict && inconclusive) return kExitStrict;
  return rc;
}

// ---------------------------------------------------------------------------
// value-curve

struct ValueCurveArgs {
  CommonArgs common;
  std::string segment;
  std::string prior;
  std::string alpha;
  int n_max = 32;
  std::size_t grid = 257;
};

int cmd_value_curve(const ValueCurveArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  if (!args.alpha.empty() && !args.prior.empty())
    throw InputError("--prior and --alpha are mutually exclusive");
  Rational alpha(1, 2);
  if (!args.alpha.empty()) {
    alpha = parse_rational_arg(args.alpha, "--alpha");
  } else if (!args.prior.empty()) {
    if (!args.segment.empty())
      throw InputError("--alpha (not --prior) addresses a custom segment");
    Belief prior = parse_prior(args.prior, family.num_states());
    if (family.num_states() != 2)
      throw InputError("--prior works on two-state games; use --alpha");
    alpha = prior[1];
  }
  if (alpha < 0 || alpha > 1) throw InputError("--alpha must lie in [0, 1]");
  if (args.n_max < 1) throw InputError("--n-max must be at least 1");
  if (args.grid < 2) throw InputError("--grid must be at least 2");
  // The DP addresses the prior by grid index, so the alpha must be a
  // grid point: alpha * (grid - 1) integral.
  if (denominator(Rational(alpha * Rational(static_cast<int>(args.grid) - 1))) != 1)
    throw InputError("--grid " + std::to_string(args.grid) +
                     " has no point at alpha = " + to_string(alpha));
  ValueCurve curve =
      value_curve_on_segment(family, segment, alpha, args.n_max, args.grid);
  return emit_text(value_curve_csv(curve), args.common.out_path);
}

// ---------------------------------------------------------------------------
// walk

struct WalkArgs {
  CommonArgs common;
  std::string segment;
  std::string prior;
  int n = 64;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string trace_path;
};

int cmd_walk(const WalkArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  if (args.n < 1) throw InputError("--n must be at least 1");
  if (args.trials < 2) throw InputError("--trials must be at least 2");
  WalkBound bound = walk_lower_bound_exact(family, segment, args.n);
  WalkSimulation sim =
      simulate_walk(family, segment, args.n, args.trials, args.seed);
  Json j;
  j["command"] = "walk";
  j["source"] = source_label(args.common);
  j["N"] = bound.n;
  j["threshold"] = bound.threshold;
  j["step"] = bound.step;
  j["exact_bound"] = bound.lower_bound;
  j["per_sqrt_n"] = bound.per_sqrt_n;
  j["survival_prob"] = to_string(bound.survival);
  j["survival_numeric"] = to_double(bound.survival);
  j["mc_estimate"] = sim.estimate;
  j["stderr"] = sim.standard_error;
  j["trials"] = sim.trials;
  j["seed"] = sim.seed;
  if (!args.prior.empty()) {
    // Midpoint-anchored bound scaled by the overlap weight; heuristic
    // away from the midpoint (see walk_prior_weight).
    Belief prior = parse_prior(args.prior, family.num_states());
    Rational weight = walk_prior_weight(segment, prior);
    j["prior"] = to_json(prior);
    j["prior_weight"] = to_string(weight);
    j["scaled_bound"] = to_double(weight) * bound.lower_bound;
  }
  int rc = emit_json(j, args.common.out_path);
  if (!args.trace_path.empty()) {
    std::ofstream out(args.trace_path);
    if (!out) throw InputError("cannot write trace file: " + args.trace_path);
    out << walk_trace_csv(sim);
  }
  return rc;
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsArgs {
  CommonArgs common;
  std::string segment;
  int depth = 10;
  int samples = 1000;
  std::uint64_t seed = 0;
};

int cmd_constants(const ConstantsArgs& args) {
  GameFamily family = load_family(args.common);
  Segment segment = parse_segment(args.segment, family.num_states());
  if (args.samples < 1) throw InputError("--samples must be at least 1");
  AlmostFairReport fair = fairness_precheck(family, segment, args.depth);
  RevelationConstants constants = estimate_small_revelation_constants(
      family, segment, args.samples, args.seed);
  Json j;
  j["command"] = "constants";
  j["source"] = source_label(args.common);
  j["almost_fair_precheck"] = precheck_summary(fair);
  j["report"] = to_json(constants);
  int rc = emit_json(j, args.common.out_path);
  if (args.common.strict && constants.non_unique_alpha) return kExitStrict;
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "repval: values of repeated zero-sum games with one-sided "
      "incomplete information"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "repval 1.0.0");

  NrValueArgs nr_args;
  CLI::App* nr = app.add_subcommand(
      "nr-value", "Exact value of the expected one-shot game at a prior");
  add_common_options(nr, nr_args.common);
  nr->add_option("--prior", nr_args.prior,
                 "Belief weights \"w0,w1,...\"; a single rational means "
                 "the weight of state 1 in a two-state game")
      ->required();

  AlmostFairArgs fair_args;
  CLI::App* fair = app.add_subcommand(
      "almost-fair", "Certify that the expected game is fair on a segment");
  add_common_options(fair, fair_args.common);
  fair->add_option("--segment", fair_args.segment,
                   "Segment endpoints \"w0,w1,...;v0,v1,...\" (default: the "
                   "full two-state segment)");
  fair->add_option("--depth", fair_args.depth, "Bisection depth")
      ->capture_default_str()
      ->check(CLI::Range(0, 30));
  fair->add_flag("--breakpoints", fair_args.breakpoints,
                 "Also report optimal-strategy breakpoint intervals");

  PiecewiseArgs pw_args;
  CLI::App* pw = app.add_subcommand(
      "piecewise",
      "Find a constant-strategy cover of a segment or evidence against one");
  add_common_options(pw, pw_args.common);
  pw->add_option("--segment", pw_args.segment, "Segment endpoints");
  pw->add_option("--min-width", pw_args.min_width,
                 "Stop refining uncovered intervals below this width")
      ->capture_default_str();
  pw->add_option("--depth", pw_args.depth, "Fairness precheck depth")
      ->capture_default_str()
      ->check(CLI::Range(0, 30));
  pw->add_option("--cover-resolution", pw_args.cover_resolution,
                 "Grid resolution for cover checks beyond two states")
      ->capture_default_str();
  pw->add_flag("--table", pw_args.table,
               "Print a human-readable table instead of JSON");

  BoundArgs bound_args;
  CLI::App* bound = app.add_subcommand(
      "bound", "Uniform value bound, or growth evidence when none exists");
  add_common_options(bound, bound_args.common);
  bound->add_option("--segment", bound_args.segment, "Segment endpoints");
  bound->add_option("--min-width", bound_args.min_width,
                    "Detection refinement floor")
      ->capture_default_str();
  bound->add_option("--depth", bound_args.depth, "Fairness precheck depth")
      ->capture_default_str()
      ->check(CLI::Range(0, 30));
  bound->add_option("--samples", bound_args.samples,
                    "Sampled pairs for the growth constants")
      ->capture_default_str();
  bound->add_option("--n", bound_args.walk_n,
                    "Walk horizon for the evidence-side lower bound")
      ->capture_default_str();
  bound->add_option("--seed", bound_args.seed, "Sampling seed")
      ->capture_default_str();
  bound->add_option("--cover-resolution", bound_args.cover_resolution,
                    "Grid resolution for cover checks beyond two states")
      ->capture_default_str();

  ValueCurveArgs curve_args;
  CLI::App* curve = app.add_subcommand(
      "value-curve", "Grid DP lower bounds for stage values, CSV output");
  add_common_options(curve, curve_args.common);
  curve->add_option("--segment", curve_args.segment, "Segment endpoints");
  curve->add_option("--prior", curve_args.prior,
                    "Prior on the default two-state segment");
  curve->add_option("--alpha", curve_args.alpha,
                    "Prior as a segment coordinate in [0, 1]");
  curve->add_option("--n-max", curve_args.n_max, "Number of stages")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  curve->add_option("--grid", curve_args.grid, "Grid points on the segment")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000));

  WalkArgs walk_args;
  CLI::App* walk = app.add_subcommand(
      "walk", "Exact absorbed-walk lower bound and Monte Carlo replay");
  add_common_options(walk, walk_args.common);
  walk->add_option("--segment", walk_args.segment, "Segment endpoints");
  walk->add_option("--n", walk_args.n, "Stage horizon N")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  walk->add_option("--trials", walk_args.trials, "Monte Carlo trials")
      ->capture_default_str();
  walk->add_option("--seed", walk_args.seed, "Simulation seed")
      ->capture_default_str();
  walk->add_option("--prior", walk_args.prior,
                   "Scale the midpoint bound to this prior by the overlap "
                   "weight (heuristic away from the midpoint)");
  walk->add_option("--trace", walk_args.trace_path,
                   "Write the first-trial trace CSV to this file");

  ConstantsArgs const_args;
  CLI::App* consts = app.add_subcommand(
      "constants", "Sampled growth-condition constants along a segment");
  add_common_options(consts, const_args.common);
  consts->add_option("--segment", const_args.segment, "Segment endpoints");
  consts->add_option("--depth", const_args.depth, "Fairness precheck depth")
      ->capture_default_str()
      ->check(CLI::Range(0, 30));
  consts->add_option("--samples", const_args.samples, "Sampled pairs")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  consts->add_option("--seed", const_args.seed, "Sampling seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (nr->parsed()) return cmd_nr_value(nr_args);
    if (fair->parsed()) return cmd_almost_fair(fair_args);
    if (pw->parsed()) return cmd_piecewise(pw_args);
    if (bound->parsed()) return cmd_bound(bound_args);
    if (curve->parsed()) return cmd_value_curve(curve_args);
    if (walk->parsed()) return cmd_walk(walk_args);
    if (consts->parsed()) return cmd_constants(const_args);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "analysis error: " << e.what() << '\n';
    return kExitAnalysis;
  }
  return kExitOk;
}
