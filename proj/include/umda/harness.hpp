#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "umda/bounds.hpp"
#include "umda/engine.hpp"
#include "umda/fitness.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"

namespace umda {

// ---- Sweep configuration -------------------------------------------------

// One resolved grid point. Configs may specify mu directly or as
// ceil(c * n ln n), and lambda directly or as ratio * mu; resolution happens
// at parse time so everything downstream sees concrete sizes.
struct SweepPoint {
  std::uint32_t n = 0;
  std::uint64_t mu = 0;
  std::uint64_t lambda = 0;
  std::uint64_t max_iterations = 0;
  double lambda_over_mu = 0.0;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::uint32_t replications = 20;
  double delta = 0.5;
  FitnessKind fitness = FitnessKind::leading_ones();
  std::vector<SweepPoint> grid;
};

// Parse the declarative JSON config (see configs/ for examples). Throws
// std::invalid_argument with a diagnostic on malformed input.
ExperimentConfig parse_experiment_config(const std::string& json_text);

// The built-in sweep used when no config file is given: a small grid that
// exercises both selection regimes in seconds.
std::string default_sweep_config_json();

// ---- Per-run and aggregated results --------------------------------------

struct ReplicationResult {
  std::uint32_t replication = 0;
  bool found_optimum = false;
  std::uint32_t iterations = 0;
  std::uint64_t evaluations_used = 0;
  std::optional<std::uint64_t> first_optimum_eval;
  double final_min_frequency = 0.0;
  double min_frequency_seen = 1.0;
  // Trace-detector counters for this run (see the check_* functions).
  std::uint32_t floor_violating_iterations = 0;
  std::uint32_t progress_qualifying = 0;
  std::uint32_t progress_successes = 0;
  std::uint32_t band_qualifying = 0;
  std::uint32_t band_overshoots = 0;
  double mean_progress_per_iteration = 0.0;
};

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double q10 = 0.0;
  double median = 0.0;
  double q90 = 0.0;
};

// Linear-interpolation quantile of a sorted sample (q in [0, 1]).
double quantile_sorted(const std::vector<double>& sorted, double q);
SummaryStats summarize(std::vector<double> values);

struct AggregateResult {
  SweepPoint point;
  std::uint32_t replications = 0;
  std::uint32_t success_count = 0;
  SummaryStats iterations;            // over all runs
  SummaryStats evaluations_to_optimum;  // T over successful runs only
  double mean_progress_per_iteration = 0.0;
  double min_frequency_observed = 1.0;
  std::uint64_t floor_violating_runs = 0;
  std::uint64_t progress_qualifying = 0;
  std::uint64_t progress_successes = 0;
  std::uint64_t band_qualifying = 0;
  std::uint64_t band_overshoots = 0;
  std::int64_t point_d_upper = 0;
  std::int64_t point_d_lower = 0;
  std::uint64_t lower_bound_evaluations = 0;
  bool lower_bound_trivial = true;
  std::vector<ReplicationResult> rows;  // one per replication, in order
};

// ---- Trace detectors (pure functions of a trace; also used on synthetic
// traces to prove the detectors themselves sound) -------------------------

// Records with min_frequency < 1/4 among iterations t < min(2n, I).
struct FloorCheck {
  std::uint32_t violating_iterations = 0;
  double min_seen = 1.0;
};
FloorCheck check_frequency_floor(const RunTrace& trace, std::uint32_t n);

// Per-iteration progress: for every iteration whose pre-sampling model has a
// critical position i and no entry below 1/4, success means the post-update
// model holds the border everywhere up to min(n, i + d). The pre-sampling
// model of iteration t is record t-1; iteration 0 sees the uniform-half
// vector (critical position 1, nothing below 1/4).
struct ProgressCheck {
  std::uint32_t qualifying = 0;
  std::uint32_t successes = 0;
};
ProgressCheck check_progress(const RunTrace& trace, std::uint32_t n,
                             std::int64_t d);

// Selection band: for every iteration whose pre-sampling model has critical
// position i, exactly i - 1 border entries and no entry in [3/4, border),
// an overshoot means max_selection_relevant > min(n, i + d + 1).
struct BandCheck {
  std::uint32_t qualifying = 0;
  std::uint32_t overshoots = 0;
};
BandCheck check_selection_band(const RunTrace& trace, std::uint32_t n,
                               std::int64_t d);

// ---- Executors -----------------------------------------------------------

// R seeded replications of one grid point (run_index = 0..R-1), executed by
// `workers` threads; the aggregate is bitwise independent of the worker
// count. Detector counters are evaluated on each trace before it is dropped,
// so memory stays constant in R.
AggregateResult run_replications(const ExperimentConfig& cfg,
                                 const SweepPoint& point, std::uint32_t workers);

// The whole grid, with one task queue spanning all (point, replication)
// pairs. Grid points share replication seeds deliberately: common random
// numbers sharpen cross-point comparisons such as the monotonicity check.
std::vector<AggregateResult> run_sweep(const ExperimentConfig& cfg,
                                       std::uint32_t workers);

// ---- Verification suites -------------------------------------------------

struct DriftReport {
  std::uint32_t n = 0;
  std::uint64_t mu = 0;
  std::uint64_t t_max = 0;
  std::uint32_t runs = 0;
  std::uint32_t exits = 0;
  double empirical_rate = 0.0;
  double bound = 0.0;       // min(1, 2 e^{-mu/(32 t_max)}) for half-width 1/4
  double threshold = 0.0;   // bound + 3 sigma + 5/R
  bool uninformative = false;  // bound capped at 1
  bool pass = false;
};
// R runs with lambda = mu and a neutral last position (suffix length 1);
// counts runs whose tracked frequency leaves the open band (1/4, 3/4)
// within t_max iterations. lambda = mu makes the update an unweighted
// Bernoulli mean at every position, the exact martingale of the band-exit
// bound, at the lowest possible cost.
DriftReport verify_neutral_drift(std::uint32_t n, std::uint64_t mu,
                                 std::uint64_t t_max, std::uint32_t runs,
                                 std::uint64_t master_seed,
                                 std::uint32_t workers);

struct ChernoffCase {
  std::uint32_t k = 0;
  double p = 0.0;
  double delta = 0.0;
  double bound_lower = 0.0;
  double bound_upper = 0.0;
  double empirical_lower = 0.0;
  double empirical_upper = 0.0;
  bool pass = false;
};
struct ChernoffReport {
  std::uint64_t samples = 0;
  std::vector<ChernoffCase> cases;
  bool pass = false;
};
// Empirical tails of Binomial(k, p) sampled as k Bernoulli draws, compared
// against the two tail bounds plus Monte-Carlo slack, for the full grid of
// (k, p, delta) combinations.
ChernoffReport verify_chernoff_mc(const std::vector<std::uint32_t>& ks,
                                  const std::vector<double>& ps,
                                  const std::vector<double>& deltas,
                                  std::uint64_t samples,
                                  std::uint64_t master_seed,
                                  std::uint32_t workers);

// ---- Scaling fit ---------------------------------------------------------

struct ScalingCell {
  std::uint32_t n = 0;
  double lambda_over_mu = 0.0;
  std::int64_t d_upper = 0;
  double median_iterations = 0.0;
  double normalized = 0.0;  // median(I) * (d_upper + 1) / n
  double median_evaluations = 0.0;
  std::uint64_t lower_bound_evaluations = 0;
  bool lower_bound_trivial = true;
  bool bracketing_ok = true;
  std::uint32_t success_count = 0;
};
struct ScalingReport {
  std::vector<ScalingCell> cells;
  double normalized_min = 0.0;
  double normalized_max = 0.0;
  double normalized_spread = 0.0;  // max / min
  bool spread_ok = false;
  bool monotone_ok = false;    // median I non-increasing in lambda/mu per n
  bool bracketing_ok = false;  // median T >= lower bound - lambda everywhere
  bool pass = false;
};
// Normalized-iteration statistic over a two-axis sweep (>= 3 distinct n,
// >= 3 distinct lambda/mu); refuses smaller sweeps. The bracketing check
// allows shortfall up to one iteration's worth of evaluations (lambda),
// the bound's own granularity.
ScalingReport scaling_fit(const std::vector<AggregateResult>& aggregates,
                          double spread_threshold = 3.0);

// ---- Output --------------------------------------------------------------

// One CSV row per replication of one grid point; header included. Fixed
// field order, floats in shortest-round-trip form: byte-stable output.
void write_point_csv(std::ostream& out, const AggregateResult& agg);

// "sweep-<seed>-g<index>.csv" / "sweep-<seed>-summary.json": outputs are
// keyed by the master seed, never by wall clock.
std::string point_csv_filename(std::uint64_t master_seed,
                               std::size_t point_index);
std::string summary_json_filename(std::uint64_t master_seed);

// JSON summary over all grid points (stable key order).
std::string summary_json(const ExperimentConfig& cfg,
                         const std::vector<AggregateResult>& aggregates);

}  // namespace umda
