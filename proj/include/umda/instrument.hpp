#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "umda/frequency.hpp"
#include "umda/sampling.hpp"

namespace umda {

// Sentinel-free observables captured once per iteration.
//
// A record for iteration t describes:
//   - the model AFTER the iteration's update (critical_position, min_frequency
//     and the band counts all refer to p^(t+1)), and
//   - the population sampled DURING the iteration (max_selection_relevant,
//     best_fitness, optimum_sampled refer to the lambda offspring of t).
//
// The pre-sampling model of iteration t is therefore record t-1 (or the
// uniform-half initial vector for t = 0), which is how the verification
// suites recover "state seen by the sampler" without storing it twice.
struct IterationRecord {
  std::uint32_t iteration = 0;
  // First position (1-based) whose frequency is below the upper border; empty
  // when every entry sits at 1 - 1/n.
  std::optional<std::uint32_t> critical_position;
  // Largest i in [1, n] such that at least mu offspring have >= i - 1 leading
  // ones. Empty only for fitness functions without a leading-prefix structure.
  std::optional<std::uint32_t> max_selection_relevant;
  double min_frequency = 0.0;
  // Band partition of the n entries, in priority order: upper border first
  // (within tolerance of 1 - 1/n), then strictly below 1/4, then the open
  // middle band (1/4, 3/4). The remainder -- entries in [3/4, border) or at
  // exactly 1/4 -- is n minus the three counts.
  std::uint32_t count_at_upper_border = 0;
  std::uint32_t count_below_quarter = 0;
  std::uint32_t count_in_middle_band = 0;
  std::int64_t best_fitness = 0;
  bool optimum_sampled = false;
};

struct RunTrace {
  std::vector<IterationRecord> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }
};

// Position of the first frequency below the upper border 1 - 1/n (1-based),
// i.e. the next position the selection pressure still has to fix. Empty when
// the whole vector sits at the border. Border equality uses the shared
// tolerance, since 1 - 1/n is generally not representable.
std::optional<std::uint32_t> critical_position(const FrequencyVector& p);

// Band statistics of a frequency vector, using the partition described on
// IterationRecord. Fills the three counts plus the minimum entry.
struct BandStats {
  double min_frequency = 0.0;
  std::uint32_t count_at_upper_border = 0;
  std::uint32_t count_below_quarter = 0;
  std::uint32_t count_in_middle_band = 0;
};
BandStats band_stats(const FrequencyVector& p);

// Largest position i in [1, n] such that at least mu individuals have at
// least i - 1 leading ones. Always defined for mu <= lambda (i = 1 needs
// zero leading ones). Uses the cached fitness values; rejects populations
// whose fitness is not prefix-valued (one_max), because "leading ones >= k"
// is then not recoverable from the cache.
std::uint32_t max_selection_relevant(const Population& pop, std::uint32_t mu,
                                     const FitnessKind& kind);

// Same quantity computed from a fitness histogram: counts[v] = number of
// offspring with fitness value v, for v in [0, n]. Shared by the streaming
// engine, which never materializes the population.
std::uint32_t max_selection_relevant_from_histogram(
    const std::vector<std::uint64_t>& counts, std::uint64_t mu, std::uint32_t n);

// Literal re-count from raw bits: do at least mu individuals carry at least
// i - 1 leading ones? Independent of cached fitness; test-scale cross-check.
bool selection_relevant_oracle(const Population& pop, std::uint32_t mu,
                               std::uint32_t i);

// For each position, the first iteration whose maximum selection-relevant
// position reached it; positions never reached are absent from the map.
std::map<std::uint32_t, std::uint32_t> first_selection_relevant_iterations(
    const RunTrace& trace, std::uint32_t n);

// CSV trace emission. Header row plus one row per record, fixed field order:
//   run_id,t,critical_pos,max_sel_relevant,min_freq,n_at_upper,
//   n_below_quarter,n_middle,best_fitness,optimum_sampled
// Optional fields serialize as empty; booleans as 0/1; min_freq with
// shortest-round-trip formatting so outputs are byte-stable across platforms.
void write_trace_header(std::ostream& out);
void write_trace_row(std::ostream& out, std::uint64_t run_id,
                     const IterationRecord& rec);
void write_trace_csv(std::ostream& out, std::uint64_t run_id,
                     const RunTrace& trace);

// Shortest-round-trip decimal form of a double (std::to_chars); shared by
// every CSV writer so identical values always serialize identically.
std::string format_double(double value);

}  // namespace umda
