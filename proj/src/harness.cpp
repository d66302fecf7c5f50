#include "umda/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include <json.hpp>

#include "umda/rng.hpp"

namespace umda {

namespace {

using ordered_json = nlohmann::ordered_json;

// Run `total` independent tasks on `workers` threads via an atomic ticket
// counter. Each task writes only to its own preallocated slot, so results
// are identical for every worker count; the first exception wins and is
// rethrown on the caller thread.
template <typename Fn>
void parallel_tasks(std::size_t total, std::uint32_t workers, const Fn& fn) {
  if (total == 0) return;
  workers = std::max<std::uint32_t>(
      1, std::min<std::uint64_t>(workers, static_cast<std::uint64_t>(total)));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::uint32_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= total) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          break;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t resolve_mu(const ordered_json& spec, std::uint32_t n) {
  if (spec.contains("value")) return spec.at("value").get<std::uint64_t>();
  if (spec.contains("c_nln")) {
    const double c = spec.at("c_nln").get<double>();
    if (!(c > 0)) throw std::invalid_argument("mu rule: c_nln must be positive");
    const double raw = c * static_cast<double>(n) * std::log(static_cast<double>(n));
    return static_cast<std::uint64_t>(nudged_ceil(raw));
  }
  throw std::invalid_argument("mu rule needs either \"value\" or \"c_nln\"");
}

std::uint64_t resolve_lambda(const ordered_json& spec, std::uint64_t mu) {
  if (spec.contains("value")) return spec.at("value").get<std::uint64_t>();
  if (spec.contains("ratio")) {
    const double r = spec.at("ratio").get<double>();
    if (!(r > 0)) throw std::invalid_argument("lambda rule: ratio must be positive");
    return static_cast<std::uint64_t>(
        std::llround(r * static_cast<double>(mu)));
  }
  throw std::invalid_argument("lambda rule needs either \"value\" or \"ratio\"");
}

ReplicationResult execute_replication(const ExperimentConfig& cfg,
                                      const SweepPoint& point,
                                      std::uint32_t replication,
                                      std::int64_t d_up, std::int64_t d_low) {
  UmdaParams params;
  params.n = point.n;
  params.mu = point.mu;
  params.lambda = point.lambda;
  params.max_iterations = point.max_iterations;
  params.master_seed = cfg.master_seed;

  RunOptions opts;
  opts.run_index = replication;
  const RunOutcome out = run_umda(params, cfg.fitness, opts);

  ReplicationResult r;
  r.replication = replication;
  r.found_optimum = out.found_optimum;
  r.iterations = out.iterations_completed;
  r.evaluations_used = out.evaluations_used;
  r.first_optimum_eval = out.first_optimum_eval_index;
  r.final_min_frequency = out.final_frequencies.min_value();

  const FloorCheck floor = check_frequency_floor(out.trace, point.n);
  r.floor_violating_iterations = floor.violating_iterations;
  const ProgressCheck prog = check_progress(out.trace, point.n, d_up);
  r.progress_qualifying = prog.qualifying;
  r.progress_successes = prog.successes;
  const BandCheck band = check_selection_band(out.trace, point.n, d_low);
  r.band_qualifying = band.qualifying;
  r.band_overshoots = band.overshoots;

  double min_seen = 1.0;
  std::uint64_t gained = 0;
  std::uint32_t prev_upper = 0;  // uniform-half start: no border entries
  for (const IterationRecord& rec : out.trace.records) {
    min_seen = std::min(min_seen, rec.min_frequency);
    if (rec.count_at_upper_border > prev_upper) {
      gained += rec.count_at_upper_border - prev_upper;
    }
    prev_upper = rec.count_at_upper_border;
  }
  r.min_frequency_seen = min_seen;
  r.mean_progress_per_iteration =
      out.iterations_completed == 0
          ? 0.0
          : static_cast<double>(gained) / out.iterations_completed;
  return r;
}

AggregateResult aggregate_point(const ExperimentConfig& cfg,
                                const SweepPoint& point,
                                std::vector<ReplicationResult> rows) {
  AggregateResult a;
  a.point = point;
  a.replications = static_cast<std::uint32_t>(rows.size());
  std::vector<double> iters;
  std::vector<double> evals;
  double progress_sum = 0.0;
  for (const ReplicationResult& r : rows) {
    if (r.found_optimum) ++a.success_count;
    iters.push_back(static_cast<double>(r.iterations));
    if (r.first_optimum_eval) {
      evals.push_back(static_cast<double>(*r.first_optimum_eval));
    }
    a.min_frequency_observed =
        std::min(a.min_frequency_observed, r.min_frequency_seen);
    if (r.floor_violating_iterations > 0) ++a.floor_violating_runs;
    a.progress_qualifying += r.progress_qualifying;
    a.progress_successes += r.progress_successes;
    a.band_qualifying += r.band_qualifying;
    a.band_overshoots += r.band_overshoots;
    progress_sum += r.mean_progress_per_iteration;
  }
  a.iterations = summarize(std::move(iters));
  a.evaluations_to_optimum = summarize(std::move(evals));
  a.mean_progress_per_iteration =
      rows.empty() ? 0.0 : progress_sum / static_cast<double>(rows.size());
  a.point_d_upper = d_upper(cfg.delta, point.lambda, point.mu);
  a.point_d_lower = d_lower(cfg.delta, point.lambda, point.mu);
  const std::int64_t xi_value = xi(point.n, point.lambda);
  const std::int64_t lb_iters =
      lower_bound_iterations(point.n, xi_value, a.point_d_lower);
  a.lower_bound_trivial = lb_iters == 0;
  a.lower_bound_evaluations =
      point.lambda * static_cast<std::uint64_t>(lb_iters);
  a.rows = std::move(rows);
  return a;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.master_seed = doc.value("master_seed", std::uint64_t{1});
    cfg.replications = doc.value("replications", std::uint32_t{20});
    if (cfg.replications < 1) {
      throw std::invalid_argument("replications must be at least 1");
    }
    cfg.delta = doc.value("delta", 0.5);
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
      throw std::invalid_argument("delta must lie strictly inside (0, 1)");
    }
    cfg.fitness = FitnessKind::parse(doc.value("fitness", "leading_ones"));

    double max_iter_factor = 10.0;
    std::optional<std::uint64_t> max_iter_value;
    if (doc.contains("max_iterations")) {
      const ordered_json& mi = doc.at("max_iterations");
      if (mi.contains("value")) {
        max_iter_value = mi.at("value").get<std::uint64_t>();
      } else if (mi.contains("factor")) {
        max_iter_factor = mi.at("factor").get<double>();
        if (!(max_iter_factor > 0)) {
          throw std::invalid_argument("max_iterations factor must be positive");
        }
      } else {
        throw std::invalid_argument(
            "max_iterations needs either \"value\" or \"factor\"");
      }
    }

    if (!doc.contains("grid") || !doc.at("grid").is_array() ||
        doc.at("grid").empty()) {
      throw std::invalid_argument("config needs a non-empty \"grid\" array");
    }
    for (const ordered_json& entry : doc.at("grid")) {
      SweepPoint pt;
      pt.n = entry.at("n").get<std::uint32_t>();
      pt.mu = resolve_mu(entry.at("mu"), pt.n);
      pt.lambda = resolve_lambda(entry.at("lambda"), pt.mu);
      pt.max_iterations =
          max_iter_value
              ? *max_iter_value
              : static_cast<std::uint64_t>(
                    std::llround(max_iter_factor * static_cast<double>(pt.n)));
      pt.lambda_over_mu =
          static_cast<double>(pt.lambda) / static_cast<double>(pt.mu);
      UmdaParams check;
      check.n = pt.n;
      check.mu = pt.mu;
      check.lambda = pt.lambda;
      check.max_iterations = pt.max_iterations;
      check.master_seed = cfg.master_seed;
      check.validate();
      cfg.fitness.validate(pt.n);
      cfg.grid.push_back(pt);
    }
    return cfg;
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") + e.what());
  }
}

std::string default_sweep_config_json() {
  return R"({
  "master_seed": 1,
  "replications": 4,
  "delta": 0.5,
  "fitness": "leading_ones",
  "max_iterations": {"factor": 10},
  "grid": [
    {"n": 16, "mu": {"c_nln": 8}, "lambda": {"ratio": 8}},
    {"n": 16, "mu": {"c_nln": 8}, "lambda": {"ratio": 32}},
    {"n": 32, "mu": {"c_nln": 8}, "lambda": {"ratio": 8}},
    {"n": 32, "mu": {"c_nln": 8}, "lambda": {"ratio": 32}}
  ]
}
)";
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.q10 = quantile_sorted(values, 0.10);
  s.median = quantile_sorted(values, 0.50);
  s.q90 = quantile_sorted(values, 0.90);
  return s;
}

FloorCheck check_frequency_floor(const RunTrace& trace, std::uint32_t n) {
  FloorCheck c;
  const std::uint64_t horizon = 2ULL * n;
  for (const IterationRecord& rec : trace.records) {
    c.min_seen = std::min(c.min_seen, rec.min_frequency);
    if (rec.iteration < horizon &&
        rec.min_frequency < 0.25 - kFrequencyTolerance) {
      ++c.violating_iterations;
    }
  }
  return c;
}

ProgressCheck check_progress(const RunTrace& trace, std::uint32_t n,
                             std::int64_t d) {
  ProgressCheck c;
  // Pre-sampling state of iteration 0: the uniform-half vector.
  std::optional<std::uint32_t> prev_critical = 1;
  std::uint32_t prev_below_quarter = 0;
  for (const IterationRecord& rec : trace.records) {
    if (prev_critical && prev_below_quarter == 0) {
      ++c.qualifying;
      const std::int64_t target =
          std::min<std::int64_t>(n, static_cast<std::int64_t>(*prev_critical) + d);
      const bool ok = !rec.critical_position ||
                      static_cast<std::int64_t>(*rec.critical_position) > target;
      if (ok) ++c.successes;
    }
    prev_critical = rec.critical_position;
    prev_below_quarter = rec.count_below_quarter;
  }
  return c;
}

BandCheck check_selection_band(const RunTrace& trace, std::uint32_t n,
                               std::int64_t d) {
  BandCheck c;
  // Pre-sampling state of iteration 0: the uniform-half vector.
  std::optional<std::uint32_t> prev_critical = 1;
  std::uint32_t prev_at_upper = 0;
  std::uint32_t prev_below_quarter = 0;
  std::uint32_t prev_middle = n;
  for (const IterationRecord& rec : trace.records) {
    const std::uint32_t prev_rest =
        n - prev_at_upper - prev_below_quarter - prev_middle;
    if (prev_critical && prev_rest == 0 &&
        prev_at_upper == *prev_critical - 1 && rec.max_selection_relevant) {
      ++c.qualifying;
      const std::int64_t limit = std::min<std::int64_t>(
          n, static_cast<std::int64_t>(*prev_critical) + d + 1);
      if (static_cast<std::int64_t>(*rec.max_selection_relevant) > limit) {
        ++c.overshoots;
      }
    }
    prev_critical = rec.critical_position;
    prev_at_upper = rec.count_at_upper_border;
    prev_below_quarter = rec.count_below_quarter;
    prev_middle = rec.count_in_middle_band;
  }
  return c;
}

AggregateResult run_replications(const ExperimentConfig& cfg,
                                 const SweepPoint& point,
                                 std::uint32_t workers) {
  const std::int64_t d_up = d_upper(cfg.delta, point.lambda, point.mu);
  const std::int64_t d_low = d_lower(cfg.delta, point.lambda, point.mu);
  std::vector<ReplicationResult> rows(cfg.replications);
  parallel_tasks(cfg.replications, workers, [&](std::size_t i) {
    rows[i] = execute_replication(cfg, point, static_cast<std::uint32_t>(i),
                                  d_up, d_low);
  });
  return aggregate_point(cfg, point, std::move(rows));
}

std::vector<AggregateResult> run_sweep(const ExperimentConfig& cfg,
                                       std::uint32_t workers) {
  const std::size_t points = cfg.grid.size();
  const std::size_t reps = cfg.replications;
  std::vector<std::int64_t> d_ups(points), d_lows(points);
  for (std::size_t pi = 0; pi < points; ++pi) {
    d_ups[pi] = d_upper(cfg.delta, cfg.grid[pi].lambda, cfg.grid[pi].mu);
    d_lows[pi] = d_lower(cfg.delta, cfg.grid[pi].lambda, cfg.grid[pi].mu);
  }
  std::vector<std::vector<ReplicationResult>> slots(points);
  for (auto& v : slots) v.resize(reps);
  parallel_tasks(points * reps, workers, [&](std::size_t task) {
    const std::size_t pi = task / reps;
    const std::size_t rep = task % reps;
    slots[pi][rep] =
        execute_replication(cfg, cfg.grid[pi], static_cast<std::uint32_t>(rep),
                            d_ups[pi], d_lows[pi]);
  });
  std::vector<AggregateResult> aggregates;
  aggregates.reserve(points);
  for (std::size_t pi = 0; pi < points; ++pi) {
    aggregates.push_back(
        aggregate_point(cfg, cfg.grid[pi], std::move(slots[pi])));
  }
  return aggregates;
}

DriftReport verify_neutral_drift(std::uint32_t n, std::uint64_t mu,
                                 std::uint64_t t_max, std::uint32_t runs,
                                 std::uint64_t master_seed,
                                 std::uint32_t workers) {
  DriftReport rep;
  rep.n = n;
  rep.mu = mu;
  rep.t_max = t_max;
  rep.runs = runs;
  rep.bound = drift_band_exit_bound(0.25, mu, t_max);
  rep.uninformative = rep.bound >= 1.0;
  rep.threshold = rep.bound +
                  3.0 * std::sqrt(rep.bound * (1.0 - rep.bound) /
                                  static_cast<double>(runs)) +
                  5.0 / static_cast<double>(runs);

  std::vector<char> exited(runs, 0);
  parallel_tasks(runs, workers, [&](std::size_t i) {
    UmdaParams params;
    params.n = n;
    params.mu = mu;
    params.lambda = mu;
    params.max_iterations = t_max;
    params.master_seed = master_seed;
    RunOptions opts;
    opts.run_index = i;
    opts.collect_trace = false;
    bool left_band = false;
    opts.observer = [&left_band, n](const IterationRecord&,
                                    const FrequencyVector& next) {
      const double v = next[n - 1];
      if (!(v > 0.25 && v < 0.75)) left_band = true;
    };
    run_umda(params, FitnessKind::neutral_suffix_leading_ones(1), opts);
    exited[i] = left_band ? 1 : 0;
  });
  for (char e : exited) rep.exits += e;
  rep.empirical_rate =
      static_cast<double>(rep.exits) / static_cast<double>(runs);
  rep.pass = rep.empirical_rate <= rep.threshold;
  return rep;
}

ChernoffReport verify_chernoff_mc(const std::vector<std::uint32_t>& ks,
                                  const std::vector<double>& ps,
                                  const std::vector<double>& deltas,
                                  std::uint64_t samples,
                                  std::uint64_t master_seed,
                                  std::uint32_t workers) {
  ChernoffReport report;
  report.samples = samples;
  for (std::uint32_t k : ks) {
    for (double p : ps) {
      for (double delta : deltas) {
        ChernoffCase c;
        c.k = k;
        c.p = p;
        c.delta = delta;
        report.cases.push_back(c);
      }
    }
  }
  parallel_tasks(report.cases.size(), workers, [&](std::size_t ci) {
    ChernoffCase& c = report.cases[ci];
    const double expectation = static_cast<double>(c.k) * c.p;
    c.bound_lower = chernoff_lower_tail(expectation, c.delta);
    c.bound_upper = chernoff_upper_tail(expectation, c.delta);
    const std::int64_t lower_cut =
        nudged_floor((1.0 - c.delta) * expectation);
    const std::int64_t upper_cut = nudged_ceil((1.0 + c.delta) * expectation);

    // One dedicated stream per case keeps results worker-count independent.
    Xoroshiro128pp gen = Xoroshiro128pp::from_seed(
        stream_seed(stream_prefix(master_seed, ci, 0), 0));
    const std::uint64_t threshold = bit_threshold(c.p);
    std::uint64_t hits_lower = 0;
    std::uint64_t hits_upper = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
      std::int64_t x = 0;
      for (std::uint32_t j = 0; j < c.k; ++j) {
        x += gen.next() < threshold;
      }
      if (x <= lower_cut) ++hits_lower;
      if (x >= upper_cut) ++hits_upper;
    }
    c.empirical_lower =
        static_cast<double>(hits_lower) / static_cast<double>(samples);
    c.empirical_upper =
        static_cast<double>(hits_upper) / static_cast<double>(samples);
    const double slack_l =
        3.0 * std::sqrt(c.bound_lower * (1.0 - c.bound_lower) /
                        static_cast<double>(samples)) +
        5.0 / static_cast<double>(samples);
    const double slack_u =
        3.0 * std::sqrt(c.bound_upper * (1.0 - c.bound_upper) /
                        static_cast<double>(samples)) +
        5.0 / static_cast<double>(samples);
    c.pass = c.empirical_lower <= c.bound_lower + slack_l &&
             c.empirical_upper <= c.bound_upper + slack_u;
  });
  report.pass = !report.cases.empty();
  for (const ChernoffCase& c : report.cases) report.pass = report.pass && c.pass;
  return report;
}

ScalingReport scaling_fit(const std::vector<AggregateResult>& aggregates,
                          double spread_threshold) {
  std::set<std::uint32_t> ns;
  std::set<double> ratios;
  for (const AggregateResult& a : aggregates) {
    ns.insert(a.point.n);
    ratios.insert(a.point.lambda_over_mu);
  }
  if (ns.size() < 3 || ratios.size() < 3) {
    throw std::invalid_argument(
        "scaling fit needs at least 3 distinct n and 3 distinct lambda/mu");
  }

  ScalingReport rep;
  for (const AggregateResult& a : aggregates) {
    if (a.point_d_upper < 0) {
      throw std::invalid_argument(
          "scaling fit needs lambda/mu large enough for non-negative "
          "per-iteration progress at every grid point");
    }
    ScalingCell cell;
    cell.n = a.point.n;
    cell.lambda_over_mu = a.point.lambda_over_mu;
    cell.d_upper = a.point_d_upper;
    cell.median_iterations = a.iterations.median;
    cell.normalized = a.iterations.median *
                      static_cast<double>(cell.d_upper + 1) /
                      static_cast<double>(cell.n);
    cell.median_evaluations = a.evaluations_to_optimum.median;
    cell.lower_bound_evaluations = a.lower_bound_evaluations;
    cell.lower_bound_trivial = a.lower_bound_trivial;
    cell.success_count = a.success_count;
    if (!cell.lower_bound_trivial) {
      const double allowed_shortfall = static_cast<double>(a.point.lambda);
      cell.bracketing_ok =
          a.evaluations_to_optimum.count > 0 &&
          cell.median_evaluations >=
              static_cast<double>(cell.lower_bound_evaluations) -
                  allowed_shortfall;
    }
    rep.cells.push_back(cell);
  }

  rep.normalized_min = rep.cells.front().normalized;
  rep.normalized_max = rep.cells.front().normalized;
  for (const ScalingCell& c : rep.cells) {
    rep.normalized_min = std::min(rep.normalized_min, c.normalized);
    rep.normalized_max = std::max(rep.normalized_max, c.normalized);
  }
  rep.normalized_spread =
      rep.normalized_min > 0 ? rep.normalized_max / rep.normalized_min : 0.0;
  rep.spread_ok =
      rep.normalized_min > 0 && rep.normalized_spread <= spread_threshold;

  rep.monotone_ok = true;
  for (std::uint32_t n : ns) {
    std::vector<const ScalingCell*> row;
    for (const ScalingCell& c : rep.cells) {
      if (c.n == n) row.push_back(&c);
    }
    std::sort(row.begin(), row.end(),
              [](const ScalingCell* a, const ScalingCell* b) {
                return a->lambda_over_mu < b->lambda_over_mu;
              });
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i]->median_iterations >
          row[i - 1]->median_iterations + 1e-9) {
        rep.monotone_ok = false;
      }
    }
  }

  rep.bracketing_ok = true;
  for (const ScalingCell& c : rep.cells) {
    rep.bracketing_ok = rep.bracketing_ok && c.bracketing_ok;
  }
  rep.pass = rep.spread_ok && rep.monotone_ok && rep.bracketing_ok;
  return rep;
}

void write_point_csv(std::ostream& out, const AggregateResult& agg) {
  out << "replication,n,mu,lambda,found_optimum,iterations,evaluations_used,"
         "first_optimum_eval,final_min_frequency,min_frequency_seen,"
         "floor_violating_iterations,progress_qualifying,progress_successes,"
         "band_qualifying,band_overshoots,mean_progress_per_iteration\n";
  for (const ReplicationResult& r : agg.rows) {
    out << r.replication << ',' << agg.point.n << ',' << agg.point.mu << ','
        << agg.point.lambda << ',' << (r.found_optimum ? 1 : 0) << ','
        << r.iterations << ',' << r.evaluations_used << ',';
    if (r.first_optimum_eval) out << *r.first_optimum_eval;
    out << ',' << format_double(r.final_min_frequency) << ','
        << format_double(r.min_frequency_seen) << ','
        << r.floor_violating_iterations << ',' << r.progress_qualifying << ','
        << r.progress_successes << ',' << r.band_qualifying << ','
        << r.band_overshoots << ','
        << format_double(r.mean_progress_per_iteration) << '\n';
  }
}

std::string point_csv_filename(std::uint64_t master_seed,
                               std::size_t point_index) {
  return "sweep-" + std::to_string(master_seed) + "-g" +
         std::to_string(point_index) + ".csv";
}

std::string summary_json_filename(std::uint64_t master_seed) {
  return "sweep-" + std::to_string(master_seed) + "-summary.json";
}

namespace {

ordered_json stats_json(const SummaryStats& s) {
  return ordered_json{{"count", s.count},
                      {"mean", s.mean},
                      {"q10", s.q10},
                      {"median", s.median},
                      {"q90", s.q90}};
}

}  // namespace

std::string summary_json(const ExperimentConfig& cfg,
                         const std::vector<AggregateResult>& aggregates) {
  ordered_json doc;
  doc["master_seed"] = cfg.master_seed;
  doc["replications"] = cfg.replications;
  doc["delta"] = cfg.delta;
  doc["fitness"] = cfg.fitness.name();
  doc["points"] = ordered_json::array();
  for (std::size_t i = 0; i < aggregates.size(); ++i) {
    const AggregateResult& a = aggregates[i];
    ordered_json p;
    p["index"] = i;
    p["n"] = a.point.n;
    p["mu"] = a.point.mu;
    p["lambda"] = a.point.lambda;
    p["lambda_over_mu"] = a.point.lambda_over_mu;
    p["max_iterations"] = a.point.max_iterations;
    p["d_upper"] = a.point_d_upper;
    p["d_lower"] = a.point_d_lower;
    p["success_count"] = a.success_count;
    p["iterations"] = stats_json(a.iterations);
    p["evaluations_to_optimum"] = stats_json(a.evaluations_to_optimum);
    p["mean_progress_per_iteration"] = a.mean_progress_per_iteration;
    p["min_frequency_observed"] = a.min_frequency_observed;
    p["floor_violating_runs"] = a.floor_violating_runs;
    p["progress"] = ordered_json{{"qualifying", a.progress_qualifying},
                                 {"successes", a.progress_successes}};
    p["band"] = ordered_json{{"qualifying", a.band_qualifying},
                             {"overshoots", a.band_overshoots}};
    p["lower_bound_evaluations"] = a.lower_bound_evaluations;
    p["lower_bound_trivial"] = a.lower_bound_trivial;
    doc["points"].push_back(p);
  }
  return doc.dump(2) + "\n";
}

}  // namespace umda
