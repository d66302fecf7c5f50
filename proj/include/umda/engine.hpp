#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "umda/fitness.hpp"
#include "umda/frequency.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"
#include "umda/sampling.hpp"

namespace umda {

// The mu best individuals under the total order (fitness descending,
// tie-break key ascending, index ascending), returned best-first. Among
// equal-fitness individuals the fresh i.i.d. keys make the cutoff choice
// uniform over subsets, which realizes the uniform tie-breaking policy.
std::vector<Individual> select_top_mu(const Population& pop, std::uint32_t mu);

// Empirical 1-frequencies of the selected individuals, clamped to
// [1/n, 1 - 1/n]: entry i = clamp(#ones at position i / mu).
FrequencyVector update_frequencies(const std::vector<Individual>& selected,
                                   std::uint32_t n, std::uint32_t mu);

struct RunOutcome {
  bool found_optimum = false;
  std::uint32_t iterations_completed = 0;  // I
  // T: 1-based index of the first optimal sample, counted in fitness
  // evaluations ((I-1)*lambda + position within the final iteration).
  std::optional<std::uint64_t> first_optimum_eval_index;
  std::uint64_t evaluations_used = 0;  // I * lambda
  FrequencyVector final_frequencies;
  RunTrace trace;
};

struct RunOptions {
  std::uint64_t run_index = 0;
  // Test hook: start from this vector instead of all-1/2. Must be clamped.
  std::optional<FrequencyVector> initial_frequencies;
  // Called after every iteration with the fresh record and the updated
  // model p^(t+1). The trace collects records regardless.
  std::function<void(const IterationRecord&, const FrequencyVector&)> observer;
  bool collect_trace = true;
};

// One full run: start from p = (1/2, ..., 1/2); per iteration sample lambda
// offspring, check each in sampling-index order for the optimum, select the
// top mu, average, clamp. The iteration in which the optimum appears is still
// completed (selection, update, record), then the run stops; otherwise it
// stops after max_iterations. The population is never materialized: pass one
// streams fitness values per individual, pass two regenerates only the
// selected individuals to accumulate per-position one-counts.
RunOutcome run_umda(const UmdaParams& params, const FitnessKind& kind,
                    const RunOptions& opts = {});

}  // namespace umda
