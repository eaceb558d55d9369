// End-to-end tests for the repval binary: exit codes, report shapes,
// frozen values, and byte-level determinism. REPVAL_BIN is injected by
// the build as the path of the built executable.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "repval/json_io.hpp"

namespace {

namespace fs = std::filesystem;
using repval::Json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("repval_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = work_dir() / ("out" + std::to_string(counter));
  const fs::path err_file = work_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string(REPVAL_BIN) + " " + args + " > " +
                          out_file.string() + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

fs::path write_unfair_game() {
  const fs::path path = work_dir() / "unfair.json";
  std::ofstream out(path);
  out << R"({"states":["a","b"],"rows":1,"cols":1,)"
      << R"("payoffs":{"a":[[1]],"b":[[1]]}})";
  return path;
}

}  // namespace

TEST_CASE("cli: nr-value on the builtin sqrt-growth family") {
  const RunResult r = run_cli("nr-value --builtin zamir --prior 1/2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.err.empty());
  const Json j = Json::parse(r.out);
  CHECK(j["command"] == "nr-value");
  CHECK(j["source"] == "zamir");
  CHECK(j["prior"] == Json::array({"1/2", "1/2"}));
  CHECK(j["value"] == "0");
  CHECK(j["row_optimal"] == Json::array({"1/2", "1/2"}));
  CHECK(j["col_optimal"] == Json::array({"3/8", "5/8"}));
  CHECK(j["row_bounds"]["singleton"] == true);
  CHECK(j["col_bounds"]["singleton"] == true);
}

TEST_CASE("cli: reports are byte-identical across reruns") {
  const std::string cmd = "walk --builtin zamir --n 8 --trials 50 --seed 12";
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.size() > 0);
}

TEST_CASE("cli: walk report carries the frozen seed-0 values") {
  const RunResult r =
      run_cli("walk --builtin zamir --n 4 --trials 2 --seed 0");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["command"] == "walk");
  CHECK(j["N"] == 4);
  CHECK(j["threshold"] == 3);
  CHECK(j["step"] == 0.125);
  CHECK(j["exact_bound"] == 0.46875);
  CHECK(j["per_sqrt_n"] == 0.234375);
  CHECK(j["survival_prob"] == "3/4");
  CHECK(j["survival_numeric"] == 0.75);
  CHECK(j["mc_estimate"] == 0.4375000000000001);
  CHECK(j["stderr"] == 0.06249999999999978);
  CHECK(j["trials"] == 2);
  CHECK(j["seed"] == 0);
}

TEST_CASE("cli: walk --prior scales the midpoint bound by the overlap") {
  const RunResult r = run_cli(
      "walk --builtin zamir --n 4 --trials 2 --seed 0 --prior 3/4");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["prior"] == Json::array({"1/4", "3/4"}));
  CHECK(j["prior_weight"] == "3/4");
  CHECK(j["scaled_bound"] == 0.75 * 0.46875);
}

TEST_CASE("cli: walk --trace writes one CSV row per stage") {
  const fs::path trace = work_dir() / "trace.csv";
  const RunResult r =
      run_cli("walk --builtin zamir --n 4 --trials 2 --seed 0 --trace " +
              trace.string());
  REQUIRE(r.exit_code == 0);
  std::istringstream in(slurp(trace));
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "stage,z,alpha,absorbed,contribution");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("cli: --out mirrors stdout byte for byte") {
  const fs::path out = work_dir() / "report.json";
  const RunResult r = run_cli(
      "nr-value --builtin market:m=2 --prior 1/2,1/2 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(out) == r.out);
}

TEST_CASE("cli: almost-fair --strict exits 4 when not fully certified") {
  const RunResult r =
      run_cli("almost-fair --builtin zamir --depth 8 --strict");
  REQUIRE(r.exit_code == 4);
  const Json j = Json::parse(r.out);
  CHECK(j["report"]["fully_certified"] == false);
  CHECK(j["report"]["violations"].empty());
}

TEST_CASE("cli: almost-fair certifies the bounded-scale family") {
  const RunResult r =
      run_cli("almost-fair --builtin dk:alpha=1/2 --depth 8 --strict");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["report"]["fully_certified"] == true);
  CHECK(j["report"]["epsilon_bound"] == "0");
}

TEST_CASE("cli: piecewise reports a certificate with a verified cover") {
  const RunResult r = run_cli("piecewise --builtin market:m=2");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["kind"] == "certificate");
  CHECK(j["result"]["q"] == 2);
  CHECK(j["cover"]["covered"] == true);
  CHECK(j["bound"] == "2");
  CHECK(j["almost_fair_precheck"]["fully_certified"] == true);
}

TEST_CASE("cli: piecewise evidence is conclusive, so --strict stays 0") {
  const RunResult r = run_cli("piecewise --builtin zamir --strict");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["result"]["kind"] == "evidence");
  CHECK(j["bound"].is_null());
}

TEST_CASE("cli: bound picks the mode from the detection result") {
  const RunResult covered = run_cli("bound --builtin market:m=2");
  REQUIRE(covered.exit_code == 0);
  const Json jc = Json::parse(covered.out);
  CHECK(jc["mode"] == "bounded");
  CHECK(jc["q"] == 2);
  CHECK(jc["bound"] == "2");
  CHECK(jc["walk"].is_null());

  const RunResult growth =
      run_cli("bound --builtin zamir --n 16 --samples 50 --seed 3");
  REQUIRE(growth.exit_code == 0);
  const Json jg = Json::parse(growth.out);
  CHECK(jg["mode"] == "sqrt-growth-evidence");
  CHECK(jg["bound"].is_null());
  CHECK(jg["constants"]["c_a"] == "1/2");
  CHECK(jg["walk"]["n"] == 16);
}

TEST_CASE("cli: constants reports the sampled pair-value slope") {
  const RunResult r =
      run_cli("constants --builtin zamir --samples 40 --seed 3");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["report"]["c_a"] == "1/2");
  CHECK(j["report"]["samples"] == 40);
  CHECK(j["report"]["seed"] == 3);
}

TEST_CASE("cli: value-curve prints the frozen CSV") {
  const RunResult r =
      run_cli("value-curve --builtin zamir --grid 5 --n-max 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out ==
        "N,V_N,grid_size,lower_bound_flag\n"
        "0,0,5,1\n"
        "1,0.5,5,1\n"
        "2,0.5,5,1\n");
}

TEST_CASE("cli: value-curve rejects an off-grid prior as an input error") {
  const RunResult r =
      run_cli("value-curve --builtin zamir --grid 5 --alpha 1/3");
  REQUIRE(r.exit_code == 2);
  CHECK(r.err.find("input error: --grid 5 has no point at alpha = 1/3") !=
        std::string::npos);
}

TEST_CASE("cli: analysis on an unfair game exits 3 with the exact reason") {
  const fs::path game = write_unfair_game();
  const RunResult r = run_cli("piecewise --game " + game.string());
  REQUIRE(r.exit_code == 3);
  CHECK(r.err ==
        "analysis error: expected game is unfair at alpha = 0 (u = 1); "
        "the requested analysis needs a fair segment\n");
}

TEST_CASE("cli: nr-value runs no fairness precheck") {
  const fs::path game = write_unfair_game();
  const RunResult r = run_cli("nr-value --game " + game.string() +
                              " --prior 1/2");
  REQUIRE(r.exit_code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["value"] == "1");
}

TEST_CASE("cli: input errors exit 2 with a named cause") {
  const RunResult unknown = run_cli("nr-value --builtin nope --prior 1/2");
  REQUIRE(unknown.exit_code == 2);
  CHECK(unknown.err == "input error: unknown builtin \"nope\"\n");

  const RunResult missing =
      run_cli("nr-value --game /does/not/exist.json --prior 1/2");
  REQUIRE(missing.exit_code == 2);
  CHECK(missing.err ==
        "input error: cannot open game file: /does/not/exist.json\n");

  const RunResult both = run_cli(
      "nr-value --builtin zamir --game /tmp/x.json --prior 1/2");
  REQUIRE(both.exit_code == 2);
  CHECK(both.err.find("exactly one of --builtin and --game") !=
        std::string::npos);

  const RunResult flag = run_cli("nr-value --builtin zamir --prior 1/2 "
                                 "--no-such-flag");
  REQUIRE(flag.exit_code == 2);
}

TEST_CASE("cli: --version prints the release string") {
  const RunResult r = run_cli("--version");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "repval 1.0.0\n");
}
