#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "umda/bounds.hpp"
#include "umda/engine.hpp"
#include "umda/harness.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitSuccess = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCapExhausted = 2;
constexpr int kExitVerificationFailed = 3;

// Flag beats environment beats default; scientific parameters have no
// environment overrides by design, only the worker budget and output dir.
std::uint32_t resolve_workers(const std::optional<std::uint32_t>& flag) {
  if (flag) return std::max<std::uint32_t>(1, *flag);
  if (const char* env = std::getenv("UMDA_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::uint32_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

std::string resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("UMDA_OUTPUT_DIR")) return env;
  return ".";
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json bound_report_json(const umda::BoundReport& r) {
  ordered_json doc;
  doc["n"] = r.n;
  doc["mu"] = r.mu;
  doc["lambda"] = r.lambda;
  doc["delta"] = r.delta;
  doc["zeta_upper"] = r.zeta_upper;
  doc["zeta_lower"] = r.zeta_lower;
  doc["d_upper"] = r.d_upper;
  doc["d_lower"] = r.d_lower;
  doc["xi"] = r.xi;
  doc["upper_bound_defined"] = r.upper_bound_defined;
  if (r.upper_bound_defined) {
    doc["upper_bound_iterations"] = r.upper_bound_iterations;
    doc["upper_bound_evaluations"] = r.upper_bound_evaluations;
  } else {
    doc["upper_bound_iterations"] = nullptr;
    doc["upper_bound_evaluations"] = nullptr;
  }
  doc["lower_bound_trivial"] = r.lower_bound_trivial;
  doc["lower_bound_iterations"] = r.lower_bound_iterations;
  doc["lower_bound_evaluations"] = r.lower_bound_evaluations;
  doc["regime_upper_ok"] = r.regime_upper_ok;
  doc["regime_lower_ok"] = r.regime_lower_ok;
  doc["regime_upper_ceil_variant_ok"] = r.regime_upper_ceil_variant_ok;
  doc["mu_threshold_upper"] = r.mu_threshold_upper;
  doc["mu_threshold_lower"] = r.mu_threshold_lower;
  doc["mu_progress_lemma_threshold"] = r.mu_progress_lemma_threshold;
  doc["mu_band_lemma_threshold"] = r.mu_band_lemma_threshold;
  doc["failure_prob_upper"] = r.failure_prob_upper;
  doc["failure_prob_lower"] = r.failure_prob_lower;
  doc["conjectured_evaluations"] = r.conjectured_evaluations;
  doc["conjectured_note"] = "order of magnitude only; hidden constants unknown";
  return doc;
}

void print_bound_report_table(const umda::BoundReport& r) {
  const auto line = [](const std::string& key, const std::string& value) {
    std::cout << "  " << key;
    for (std::size_t i = key.size(); i < 32; ++i) std::cout << ' ';
    std::cout << value << "\n";
  };
  std::cout << "bound report (n=" << r.n << ", mu=" << r.mu
            << ", lambda=" << r.lambda << ", delta=" << umda::format_double(r.delta)
            << ")\n";
  line("zeta_upper", umda::format_double(r.zeta_upper));
  line("zeta_lower", umda::format_double(r.zeta_lower));
  line("d_upper", std::to_string(r.d_upper));
  line("d_lower", std::to_string(r.d_lower));
  line("xi", std::to_string(r.xi));
  if (r.upper_bound_defined) {
    line("upper_bound_iterations", std::to_string(r.upper_bound_iterations));
    line("upper_bound_evaluations", std::to_string(r.upper_bound_evaluations));
  } else {
    line("upper_bound_iterations", "- (needs lambda >= mu/zeta_upper)");
    line("upper_bound_evaluations", "-");
  }
  line("lower_bound_iterations", std::to_string(r.lower_bound_iterations) +
                                     (r.lower_bound_trivial ? " (trivial)" : ""));
  line("lower_bound_evaluations", std::to_string(r.lower_bound_evaluations));
  line("regime_upper_ok", r.regime_upper_ok ? "yes" : "no");
  line("regime_lower_ok", r.regime_lower_ok ? "yes" : "no");
  line("regime_upper_ceil_variant_ok",
       r.regime_upper_ceil_variant_ok ? "yes" : "no");
  line("mu_threshold_upper", umda::format_double(r.mu_threshold_upper));
  line("mu_threshold_lower", umda::format_double(r.mu_threshold_lower));
  line("mu_progress_lemma_threshold",
       umda::format_double(r.mu_progress_lemma_threshold));
  line("mu_band_lemma_threshold",
       umda::format_double(r.mu_band_lemma_threshold));
  line("failure_prob_upper", umda::format_double(r.failure_prob_upper));
  line("failure_prob_lower", umda::format_double(r.failure_prob_lower));
  line("conjectured_evaluations",
       umda::format_double(r.conjectured_evaluations) +
           " (order of magnitude only)");
}

struct RunArgs {
  std::uint32_t n = 0;
  std::uint64_t mu = 0;
  std::uint64_t lambda = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 0;  // 0 = default 10 n
  std::string fitness = "leading_ones";
  std::string trace_path;
};

int cmd_run(const RunArgs& args) {
  umda::UmdaParams params;
  params.n = args.n;
  params.mu = args.mu;
  params.lambda = args.lambda;
  params.max_iterations = args.max_iters != 0
                              ? args.max_iters
                              : umda::UmdaParams::default_max_iterations(args.n);
  params.master_seed = args.seed;
  params.validate();
  const umda::FitnessKind kind = umda::FitnessKind::parse(args.fitness);
  kind.validate(params.n);

  umda::RunOptions opts;
  opts.collect_trace = false;
  std::ofstream trace_out;
  if (!args.trace_path.empty()) {
    const fs::path p(args.trace_path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    trace_out.open(p, std::ios::binary);
    if (!trace_out) {
      throw std::invalid_argument("cannot open trace path: " + args.trace_path);
    }
    umda::write_trace_header(trace_out);
    opts.observer = [&trace_out](const umda::IterationRecord& rec,
                                 const umda::FrequencyVector&) {
      umda::write_trace_row(trace_out, 0, rec);
    };
  }

  const umda::RunOutcome out = umda::run_umda(params, kind, opts);

  ordered_json doc;
  doc["n"] = params.n;
  doc["mu"] = params.mu;
  doc["lambda"] = params.lambda;
  doc["master_seed"] = params.master_seed;
  doc["fitness"] = kind.name();
  doc["max_iterations"] = params.max_iterations;
  doc["found_optimum"] = out.found_optimum;
  doc["iterations_completed"] = out.iterations_completed;
  if (out.first_optimum_eval_index) {
    doc["first_optimum_eval_index"] = *out.first_optimum_eval_index;
  } else {
    doc["first_optimum_eval_index"] = nullptr;
  }
  doc["evaluations_used"] = out.evaluations_used;
  const auto critical = umda::critical_position(out.final_frequencies);
  if (critical) {
    doc["final_critical_position"] = *critical;
  } else {
    doc["final_critical_position"] = nullptr;
  }
  doc["final_min_frequency"] = out.final_frequencies.min_value();
  doc["final_frequencies"] = out.final_frequencies.values;
  std::cout << doc.dump(2) << "\n";
  return out.found_optimum ? kExitSuccess : kExitCapExhausted;
}

struct BoundsArgs {
  std::uint32_t n = 0;
  std::uint64_t mu = 0;
  std::uint64_t lambda = 0;
  double delta = 0.5;
  std::string format = "json";
};

int cmd_bounds(const BoundsArgs& args) {
  const umda::BoundReport report =
      umda::make_bound_report(args.n, args.mu, args.lambda, args.delta);
  if (args.format == "table") {
    print_bound_report_table(report);
  } else {
    std::cout << bound_report_json(report).dump(2) << "\n";
  }
  return kExitSuccess;
}

struct SweepArgs {
  std::optional<std::string> config_path;
  std::optional<std::uint32_t> workers;
  std::optional<std::string> output_dir;
};

int cmd_sweep(const SweepArgs& args) {
  const std::string cfg_text = args.config_path
                                   ? slurp_file(*args.config_path)
                                   : umda::default_sweep_config_json();
  const umda::ExperimentConfig cfg = umda::parse_experiment_config(cfg_text);
  const std::uint32_t workers = resolve_workers(args.workers);
  const fs::path out_dir(resolve_output_dir(args.output_dir));
  fs::create_directories(out_dir);

  const std::vector<umda::AggregateResult> aggregates =
      umda::run_sweep(cfg, workers);

  bool capped = false;
  for (std::size_t i = 0; i < aggregates.size(); ++i) {
    const umda::AggregateResult& a = aggregates[i];
    const fs::path csv_path =
        out_dir / umda::point_csv_filename(cfg.master_seed, i);
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      throw std::invalid_argument("cannot write " + csv_path.string());
    }
    umda::write_point_csv(csv, a);
    std::cout << "point " << i << ": n=" << a.point.n << " mu=" << a.point.mu
              << " lambda=" << a.point.lambda << " success=" << a.success_count
              << "/" << a.replications
              << " median_iterations=" << umda::format_double(a.iterations.median)
              << " -> " << csv_path.string() << "\n";
    if (a.success_count < a.replications) capped = true;
  }
  const fs::path summary_path =
      out_dir / umda::summary_json_filename(cfg.master_seed);
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) {
    throw std::invalid_argument("cannot write " + summary_path.string());
  }
  summary << umda::summary_json(cfg, aggregates);
  std::cout << "summary -> " << summary_path.string() << "\n";
  return capped ? kExitCapExhausted : kExitSuccess;
}

// ---- verify --------------------------------------------------------------

const char* default_verify_config() {
  return R"({
  "master_seed": 1,
  "delta": 0.5,
  "floor": {
    "n": 100, "mu": {"c_nln": 8}, "lambda": {"ratio": 8},
    "replications": 20, "max_violating_runs": 1
  },
  "progress": {
    "n": 64, "mu": {"c_nln": 8}, "lambda": {"ratio": 348},
    "replications": 20, "min_success_rate": 0.9
  },
  "band": {
    "n": 64, "mu": {"c_nln": 8}, "lambda": {"ratio": 1},
    "replications": 20, "max_overshoot_rate": 0.05
  },
  "drift": {"n": 64, "mu": 6400, "t_max": 100, "replications": 400},
  "chernoff": {
    "k": [50, 200, 1000], "p": [0.1, 0.5, 0.9], "delta": [0.2, 0.5, 0.9],
    "samples": 100000
  },
  "scaling": {
    "n": [64, 128, 256], "ratio": [22, 348, 5568], "mu": {"c_nln": 8},
    "replications": 20, "spread_threshold": 3.0
  }
})";
}

// Build the single-point (or grid) sweep config a verification suite needs,
// reusing the sweep parser so rules and validation stay in one place.
umda::ExperimentConfig suite_sweep_config(const ordered_json& root,
                                          const ordered_json& suite,
                                          const std::vector<std::uint32_t>& ns,
                                          const std::vector<double>& ratios) {
  ordered_json cfg;
  cfg["master_seed"] = root.at("master_seed");
  cfg["replications"] = suite.at("replications");
  cfg["delta"] = root.at("delta");
  cfg["fitness"] = "leading_ones";
  cfg["max_iterations"] = ordered_json{{"factor", 10}};
  cfg["grid"] = ordered_json::array();
  for (const std::uint32_t n : ns) {
    for (const double ratio : ratios) {
      ordered_json pt;
      pt["n"] = n;
      pt["mu"] = suite.at("mu");
      pt["lambda"] = ordered_json{{"ratio", ratio}};
      cfg["grid"].push_back(pt);
    }
  }
  return umda::parse_experiment_config(cfg.dump());
}

ordered_json verdict_floor(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("floor");
  const umda::ExperimentConfig cfg = suite_sweep_config(
      root, suite, {suite.at("n").get<std::uint32_t>()},
      {suite.at("lambda").at("ratio").get<double>()});
  const umda::AggregateResult agg =
      umda::run_replications(cfg, cfg.grid[0], workers);
  const std::uint64_t allowed = suite.at("max_violating_runs");
  ordered_json v;
  v["suite"] = "floor";
  v["n"] = cfg.grid[0].n;
  v["mu"] = cfg.grid[0].mu;
  v["lambda"] = cfg.grid[0].lambda;
  v["replications"] = cfg.replications;
  v["violating_runs"] = agg.floor_violating_runs;
  v["max_violating_runs"] = allowed;
  v["min_frequency_observed"] = agg.min_frequency_observed;
  v["success_count"] = agg.success_count;
  v["pass"] = agg.floor_violating_runs <= allowed;
  return v;
}

ordered_json verdict_progress(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("progress");
  const umda::ExperimentConfig cfg = suite_sweep_config(
      root, suite, {suite.at("n").get<std::uint32_t>()},
      {suite.at("lambda").at("ratio").get<double>()});
  const umda::AggregateResult agg =
      umda::run_replications(cfg, cfg.grid[0], workers);
  const double min_rate = suite.at("min_success_rate");
  const double rate =
      agg.progress_qualifying == 0
          ? 0.0
          : static_cast<double>(agg.progress_successes) /
                static_cast<double>(agg.progress_qualifying);
  ordered_json v;
  v["suite"] = "progress";
  v["n"] = cfg.grid[0].n;
  v["mu"] = cfg.grid[0].mu;
  v["lambda"] = cfg.grid[0].lambda;
  v["replications"] = cfg.replications;
  v["d_upper"] = agg.point_d_upper;
  v["qualifying_iterations"] = agg.progress_qualifying;
  v["successes"] = agg.progress_successes;
  v["success_rate"] = rate;
  v["min_success_rate"] = min_rate;
  v["pass"] = agg.progress_qualifying > 0 && rate >= min_rate;
  return v;
}

ordered_json verdict_band(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("band");
  const umda::ExperimentConfig cfg = suite_sweep_config(
      root, suite, {suite.at("n").get<std::uint32_t>()},
      {suite.at("lambda").at("ratio").get<double>()});
  const umda::AggregateResult agg =
      umda::run_replications(cfg, cfg.grid[0], workers);
  const double max_rate = suite.at("max_overshoot_rate");
  const double rate =
      agg.band_qualifying == 0
          ? 0.0
          : static_cast<double>(agg.band_overshoots) /
                static_cast<double>(agg.band_qualifying);
  ordered_json v;
  v["suite"] = "band";
  v["n"] = cfg.grid[0].n;
  v["mu"] = cfg.grid[0].mu;
  v["lambda"] = cfg.grid[0].lambda;
  v["replications"] = cfg.replications;
  v["d_lower"] = agg.point_d_lower;
  v["qualifying_iterations"] = agg.band_qualifying;
  v["overshoots"] = agg.band_overshoots;
  v["overshoot_rate"] = rate;
  v["max_overshoot_rate"] = max_rate;
  v["pass"] = agg.band_qualifying > 0 && rate <= max_rate;
  return v;
}

ordered_json verdict_drift(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("drift");
  const umda::DriftReport rep = umda::verify_neutral_drift(
      suite.at("n"), suite.at("mu"), suite.at("t_max"),
      suite.at("replications"), root.at("master_seed"), workers);
  ordered_json v;
  v["suite"] = "drift";
  v["n"] = rep.n;
  v["mu"] = rep.mu;
  v["t_max"] = rep.t_max;
  v["runs"] = rep.runs;
  v["exits"] = rep.exits;
  v["empirical_rate"] = rep.empirical_rate;
  v["bound"] = rep.bound;
  v["threshold"] = rep.threshold;
  v["uninformative"] = rep.uninformative;
  v["pass"] = rep.pass;
  return v;
}

ordered_json verdict_chernoff(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("chernoff");
  const umda::ChernoffReport rep = umda::verify_chernoff_mc(
      suite.at("k").get<std::vector<std::uint32_t>>(),
      suite.at("p").get<std::vector<double>>(),
      suite.at("delta").get<std::vector<double>>(), suite.at("samples"),
      root.at("master_seed"), workers);
  ordered_json v;
  v["suite"] = "chernoff";
  v["samples"] = rep.samples;
  v["cases"] = ordered_json::array();
  for (const umda::ChernoffCase& c : rep.cases) {
    v["cases"].push_back(ordered_json{{"k", c.k},
                                      {"p", c.p},
                                      {"delta", c.delta},
                                      {"bound_lower", c.bound_lower},
                                      {"empirical_lower", c.empirical_lower},
                                      {"bound_upper", c.bound_upper},
                                      {"empirical_upper", c.empirical_upper},
                                      {"pass", c.pass}});
  }
  v["pass"] = rep.pass;
  return v;
}

ordered_json verdict_scaling(const ordered_json& root, std::uint32_t workers) {
  const ordered_json& suite = root.at("scaling");
  const umda::ExperimentConfig cfg = suite_sweep_config(
      root, suite, suite.at("n").get<std::vector<std::uint32_t>>(),
      suite.at("ratio").get<std::vector<double>>());
  const std::vector<umda::AggregateResult> aggs = umda::run_sweep(cfg, workers);
  const umda::ScalingReport rep =
      umda::scaling_fit(aggs, suite.at("spread_threshold"));
  ordered_json v;
  v["suite"] = "scaling";
  v["replications"] = cfg.replications;
  v["cells"] = ordered_json::array();
  for (const umda::ScalingCell& c : rep.cells) {
    v["cells"].push_back(
        ordered_json{{"n", c.n},
                     {"lambda_over_mu", c.lambda_over_mu},
                     {"d_upper", c.d_upper},
                     {"success_count", c.success_count},
                     {"median_iterations", c.median_iterations},
                     {"normalized", c.normalized},
                     {"median_evaluations", c.median_evaluations},
                     {"lower_bound_evaluations", c.lower_bound_evaluations},
                     {"lower_bound_trivial", c.lower_bound_trivial},
                     {"bracketing_ok", c.bracketing_ok}});
  }
  v["normalized_min"] = rep.normalized_min;
  v["normalized_max"] = rep.normalized_max;
  v["normalized_spread"] = rep.normalized_spread;
  v["spread_ok"] = rep.spread_ok;
  v["monotone_ok"] = rep.monotone_ok;
  v["bracketing_ok"] = rep.bracketing_ok;
  v["pass"] = rep.pass;
  return v;
}

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> config_path;
  std::optional<std::uint32_t> workers;
};

int cmd_verify(const VerifyArgs& args) {
  ordered_json root = ordered_json::parse(default_verify_config());
  if (args.config_path) {
    ordered_json patch;
    try {
      patch = ordered_json::parse(slurp_file(*args.config_path));
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("malformed verify config: ") +
                                  e.what());
    }
    root.merge_patch(patch);
  }
  const std::uint32_t workers = resolve_workers(args.workers);

  std::vector<std::string> suites;
  if (args.suite == "all") {
    suites = {"chernoff", "drift", "floor", "progress", "band", "scaling"};
  } else {
    suites = {args.suite};
  }

  ordered_json doc;
  doc["suites"] = ordered_json::array();
  bool all_pass = true;
  for (const std::string& name : suites) {
    ordered_json verdict;
    if (name == "floor") {
      verdict = verdict_floor(root, workers);
    } else if (name == "progress") {
      verdict = verdict_progress(root, workers);
    } else if (name == "band") {
      verdict = verdict_band(root, workers);
    } else if (name == "drift") {
      verdict = verdict_drift(root, workers);
    } else if (name == "chernoff") {
      verdict = verdict_chernoff(root, workers);
    } else if (name == "scaling") {
      verdict = verdict_scaling(root, workers);
    }
    all_pass = all_pass && verdict.at("pass").get<bool>();
    doc["suites"].push_back(std::move(verdict));
  }
  doc["pass"] = all_pass;
  std::cout << doc.dump(2) << "\n";
  return all_pass ? kExitSuccess : kExitVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic UMDA-on-LeadingOnes simulator with runtime-bound "
      "calculators and verification suites"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run_cmd =
      app.add_subcommand("run", "One seeded run; outcome JSON on stdout");
  run_cmd->add_option("--n", run_args.n, "problem dimension (>= 2)")
      ->required();
  run_cmd->add_option("--mu", run_args.mu, "parent population size")
      ->required();
  run_cmd->add_option("--lambda", run_args.lambda, "offspring population size")
      ->required();
  run_cmd->add_option("--seed", run_args.seed, "master seed (default 0)");
  run_cmd->add_option("--max-iters", run_args.max_iters,
                      "iteration cap (default 10 n)");
  run_cmd->add_option("--fitness", run_args.fitness,
                      "leading_ones | one_max | neutral_suffix:<k>");
  run_cmd->add_option("--trace", run_args.trace_path,
                      "write the per-iteration CSV trace to this path");

  BoundsArgs bounds_args;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "Evaluate every bound formula for one parameter tuple");
  bounds_cmd->add_option("--n", bounds_args.n, "problem dimension")->required();
  bounds_cmd->add_option("--mu", bounds_args.mu, "parent population size")
      ->required();
  bounds_cmd
      ->add_option("--lambda", bounds_args.lambda, "offspring population size")
      ->required();
  bounds_cmd->add_option("--delta", bounds_args.delta,
                         "constant in (0, 1), default 0.5");
  bounds_cmd->add_option("--format", bounds_args.format, "json | table")
      ->check(CLI::IsMember({"json", "table"}));

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Seeded replications over a parameter grid; CSV + JSON outputs");
  sweep_cmd->add_option("--config", sweep_args.config_path,
                        "sweep config JSON (default: built-in small grid)");
  sweep_cmd->add_option("--workers", sweep_args.workers,
                        "worker threads (default: UMDA_WORKERS or cores)");
  sweep_cmd->add_option("--output-dir", sweep_args.output_dir,
                        "output directory (default: UMDA_OUTPUT_DIR or .)");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run a verification suite and print machine-readable verdicts");
  verify_cmd
      ->add_option("suite", verify_args.suite,
                   "floor | progress | band | drift | chernoff | scaling | all")
      ->required()
      ->check(CLI::IsMember(
          {"floor", "progress", "band", "drift", "chernoff", "scaling", "all"}));
  verify_cmd->add_option("--config", verify_args.config_path,
                         "override the built-in suite parameters (JSON)");
  verify_cmd->add_option("--workers", verify_args.workers,
                         "worker threads (default: UMDA_WORKERS or cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
    if (verify_cmd->parsed()) return cmd_verify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
