// End-to-end tests of the command-line binary. The test runner exports the
// binary's path in UMDA_CLI; every case shells out, captures stdout/stderr
// into files under a private temp directory, and inspects exit codes and
// artifacts.
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "umda/bounds.hpp"
#include "umda/engine.hpp"
#include "umda/fitness.hpp"
#include "umda/harness.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("UMDA_CLI");
  REQUIRE_MESSAGE(p != nullptr,
                  "UMDA_CLI must point at the command-line binary");
  return std::string(p);
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("umda-cli-" + std::to_string(::getpid()) + "-" + tag + "-" +
                  std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// `prefix` is prepended verbatim (for inline environment assignments).
CliResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& prefix = "") {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = prefix + "\"" + cli_path() + "\" " + args + " > \"" +
                          out.string() + "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  REQUIRE(WIFEXITED(status));
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("a seeded run reports the same outcome as the library") {
  const fs::path dir = fresh_dir("run");
  const CliResult r =
      run_cli("run --n 12 --mu 5 --lambda 40 --seed 21", dir);
  CHECK(r.exit_code == 0);  // the optimum is reachable at this size
  const json doc = json::parse(r.out);
  CHECK(doc.at("n") == 12);
  CHECK(doc.at("mu") == 5);
  CHECK(doc.at("lambda") == 40);
  CHECK(doc.at("master_seed") == 21);
  CHECK(doc.at("fitness") == "leading_ones");
  CHECK(doc.at("max_iterations") == 120);  // default: 10 n

  umda::UmdaParams params;
  params.n = 12;
  params.mu = 5;
  params.lambda = 40;
  params.master_seed = 21;
  params.max_iterations = 120;
  const umda::RunOutcome direct =
      umda::run_umda(params, umda::FitnessKind{}, umda::RunOptions{});
  CHECK(doc.at("found_optimum") == direct.found_optimum);
  CHECK(doc.at("iterations_completed") == direct.iterations_completed);
  CHECK(doc.at("evaluations_used") == direct.evaluations_used);
  if (direct.first_optimum_eval_index) {
    CHECK(doc.at("first_optimum_eval_index") == *direct.first_optimum_eval_index);
  } else {
    CHECK(doc.at("first_optimum_eval_index").is_null());
  }
  CHECK(doc.at("final_frequencies").size() == 12);
  CHECK(doc.at("final_min_frequency") ==
        direct.final_frequencies.min_value());
  fs::remove_all(dir);
}

TEST_CASE("an exhausted iteration cap is signalled by exit code 2") {
  const fs::path dir = fresh_dir("cap");
  // One individual per iteration and a single iteration: n = 20 cannot be
  // solved by a coin flip population this small.
  const CliResult r =
      run_cli("run --n 20 --mu 1 --lambda 1 --max-iters 1 --seed 3", dir);
  CHECK(r.exit_code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc.at("found_optimum") == false);
  CHECK(doc.at("iterations_completed") == 1);
  CHECK(doc.at("first_optimum_eval_index").is_null());
  fs::remove_all(dir);
}

TEST_CASE("missing required flags and bad values exit with code 1") {
  const fs::path dir = fresh_dir("usage");
  CHECK(run_cli("run --n 8", dir).exit_code == 1);          // no mu/lambda
  CHECK(run_cli("frobnicate", dir).exit_code == 1);         // no such command
  CHECK(run_cli("", dir).exit_code == 1);                   // subcommand required
  CHECK(run_cli("verify nonsense", dir).exit_code == 1);    // unknown suite
  const CliResult bad_params =
      run_cli("run --n 8 --mu 9 --lambda 4", dir);          // mu > lambda
  CHECK(bad_params.exit_code == 1);
  CHECK(bad_params.err.find("error:") != std::string::npos);
  const CliResult bad_delta =
      run_cli("bounds --n 10 --mu 2 --lambda 4 --delta 1.5", dir);
  CHECK(bad_delta.exit_code == 1);
  CHECK(bad_delta.err.find("error:") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("the trace flag writes one CSV row per iteration") {
  const fs::path dir = fresh_dir("trace");
  const fs::path trace = dir / "trace.csv";
  const CliResult r = run_cli(
      "run --n 10 --mu 6 --lambda 30 --seed 4 --trace \"" + trace.string() +
          "\"",
      dir);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  std::istringstream in(slurp(trace));
  std::string header;
  REQUIRE(std::getline(in, header));
  std::ostringstream expected_header;
  umda::write_trace_header(expected_header);
  CHECK(header + "\n" == expected_header.str());
  std::uint64_t rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == doc.at("iterations_completed").get<std::uint64_t>());
  fs::remove_all(dir);
}

TEST_CASE("bound calculations match the library in both output formats") {
  const fs::path dir = fresh_dir("bounds");
  const CliResult r = run_cli(
      "bounds --n 100 --mu 10000 --lambda 10000 --delta 0.5 --format json",
      dir);
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  const umda::BoundReport rep = umda::make_bound_report(100, 10000, 10000, 0.5);
  CHECK(doc.at("d_lower") == rep.d_lower);
  CHECK(doc.at("xi") == 66);
  CHECK(doc.at("lower_bound_iterations") == 17);
  CHECK(doc.at("lower_bound_evaluations") == 170000);
  CHECK(doc.at("upper_bound_defined") == false);
  CHECK(doc.at("upper_bound_iterations").is_null());
  CHECK(doc.at("regime_lower_ok") == false);
  CHECK(doc.at("failure_prob_lower") == rep.failure_prob_lower);
  CHECK(doc.at("conjectured_evaluations") == rep.conjectured_evaluations);

  const CliResult table = run_cli(
      "bounds --n 100 --mu 10000 --lambda 10000 --format table", dir);
  REQUIRE(table.exit_code == 0);
  CHECK(table.out.find("lower_bound_iterations") != std::string::npos);
  CHECK(table.out.find("17") != std::string::npos);
  CHECK(json::accept(table.out) == false);  // genuinely tabular
  fs::remove_all(dir);
}

namespace {

fs::path write_config(const fs::path& dir, const std::string& name,
                      const std::string& text) {
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << text;
  return p;
}

const char* kTinySweepConfig = R"({
  "master_seed": 5,
  "replications": 2,
  "grid": [{"n": 12, "mu": {"value": 20}, "lambda": {"value": 60}}]
})";

}  // namespace

TEST_CASE("sweeps write per-point CSVs plus a summary, reproducibly") {
  const fs::path dir = fresh_dir("sweep");
  const fs::path cfg = write_config(dir, "cfg.json", kTinySweepConfig);
  const fs::path out_a = dir / "a";
  const fs::path out_b = dir / "b";

  const CliResult ra = run_cli("sweep --config \"" + cfg.string() +
                                   "\" --output-dir \"" + out_a.string() +
                                   "\" --workers 1",
                               dir);
  REQUIRE(ra.exit_code == 0);
  const fs::path csv_a = out_a / "sweep-5-g0.csv";
  const fs::path sum_a = out_a / "sweep-5-summary.json";
  REQUIRE(fs::exists(csv_a));
  REQUIRE(fs::exists(sum_a));
  CHECK(ra.out.find("sweep-5-summary.json") != std::string::npos);

  const std::string csv_text = slurp(csv_a);
  CHECK(csv_text.rfind("replication,n,mu,lambda,", 0) == 0);
  const json summary = json::parse(slurp(sum_a));
  CHECK(summary.at("master_seed") == 5);
  CHECK(summary.at("points").size() == 1);
  CHECK(summary.at("points")[0].at("n") == 12);

  // A second pass with more workers must reproduce every byte.
  const CliResult rb = run_cli("sweep --config \"" + cfg.string() +
                                   "\" --output-dir \"" + out_b.string() +
                                   "\" --workers 3",
                               dir);
  REQUIRE(rb.exit_code == 0);
  CHECK(slurp(out_b / "sweep-5-g0.csv") == csv_text);
  CHECK(slurp(out_b / "sweep-5-summary.json") == slurp(sum_a));
  fs::remove_all(dir);
}

TEST_CASE("environment variables stand in for the sweep flags") {
  const fs::path dir = fresh_dir("env");
  const fs::path cfg = write_config(dir, "cfg.json", kTinySweepConfig);
  const fs::path out_env = dir / "from-env";
  const CliResult r =
      run_cli("sweep --config \"" + cfg.string() + "\"", dir,
              "UMDA_OUTPUT_DIR=\"" + out_env.string() + "\" UMDA_WORKERS=2 ");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(out_env / "sweep-5-g0.csv"));
  CHECK(fs::exists(out_env / "sweep-5-summary.json"));

  // Flags win over the environment.
  const fs::path out_flag = dir / "from-flag";
  const CliResult rf =
      run_cli("sweep --config \"" + cfg.string() + "\" --output-dir \"" +
                  out_flag.string() + "\"",
              dir, "UMDA_OUTPUT_DIR=\"" + (dir / "ignored").string() + "\" ");
  REQUIRE(rf.exit_code == 0);
  CHECK(fs::exists(out_flag / "sweep-5-summary.json"));
  CHECK(!fs::exists(dir / "ignored"));
  CHECK(slurp(out_flag / "sweep-5-g0.csv") == slurp(out_env / "sweep-5-g0.csv"));
  fs::remove_all(dir);
}

TEST_CASE("a defaulted sweep runs from the built-in grid") {
  const fs::path dir = fresh_dir("sweep-default");
  const fs::path out = dir / "out";
  const CliResult r =
      run_cli("sweep --output-dir \"" + out.string() + "\" --workers 2", dir);
  REQUIRE(r.exit_code == 0);
  // Built-in grid: seed 1, four points.
  for (int g = 0; g < 4; ++g) {
    CHECK(fs::exists(out / ("sweep-1-g" + std::to_string(g) + ".csv")));
  }
  const json summary = json::parse(slurp(out / "sweep-1-summary.json"));
  CHECK(summary.at("points").size() == 4);
  fs::remove_all(dir);
}

TEST_CASE("a verification suite with a planted defect exits with code 3") {
  const fs::path dir = fresh_dir("verify-fail");
  // Two parents cannot hold any frequency away from the clamp: the floor
  // property is violated immediately, and zero violating runs are allowed.
  const fs::path cfg = write_config(dir, "floor.json", R"({
    "floor": {
      "n": 30,
      "mu": {"value": 2, "c_nln": null},
      "lambda": {"ratio": 4},
      "replications": 2,
      "max_violating_runs": 0
    }
  })");
  const CliResult r =
      run_cli("verify floor --config \"" + cfg.string() + "\" --workers 2",
              dir);
  CHECK(r.exit_code == 3);
  const json doc = json::parse(r.out);
  CHECK(doc.at("pass") == false);
  REQUIRE(doc.at("suites").size() == 1);
  const json& v = doc.at("suites")[0];
  CHECK(v.at("suite") == "floor");
  CHECK(v.at("mu") == 2);
  CHECK(v.at("violating_runs") == 2);
  CHECK(v.at("pass") == false);
  fs::remove_all(dir);
}

TEST_CASE("a cheap well-behaved suite verifies cleanly end to end") {
  const fs::path dir = fresh_dir("verify-pass");
  const fs::path cfg = write_config(dir, "chernoff.json", R"({
    "chernoff": {
      "k": [20],
      "p": [0.5],
      "delta": [0.5],
      "samples": 20000
    }
  })");
  const CliResult r = run_cli(
      "verify chernoff --config \"" + cfg.string() + "\" --workers 2", dir);
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("pass") == true);
  REQUIRE(doc.at("suites").size() == 1);
  CHECK(doc.at("suites")[0].at("suite") == "chernoff");
  CHECK(doc.at("suites")[0].at("pass") == true);
  fs::remove_all(dir);
}
