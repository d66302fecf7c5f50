#pragma once

#include <cstdint>
#include <vector>

#include "umda/bitstring.hpp"
#include "umda/fitness.hpp"
#include "umda/frequency.hpp"
#include "umda/params.hpp"
#include "umda/rng.hpp"

namespace umda {

inline constexpr std::int64_t kFitnessUnevaluated = -1;

struct Individual {
  PackedBits bits;
  std::int64_t fitness = kFitnessUnevaluated;
  std::uint64_t tiebreak_key = 0;
};

struct Population {
  std::vector<Individual> individuals;
  std::uint64_t iteration = 0;

  std::size_t size() const { return individuals.size(); }
};

// ---- Draw protocol -------------------------------------------------------
//
// Every individual owns one stream (see rng.hpp). The draw protocol is a pure
// function of the frequency vector, shared by the scalar sampler and the
// batched kernels, so the streaming engine reproduces exactly what
// sample_individual would emit for the same stream coordinates:
//
//   draw 0: selection tie-break key.
//   If the vector starts with a run of c >= 2 positions all holding the same
//   value q (bitwise equal doubles — in practice the clamp border prefix):
//     draw 1: prefix survival; u < threshold(q^c) means positions 0..c-1 all
//             sampled 1, and sampling continues per-bit at position c.
//             Otherwise draw 2 picks the first-zero position D in [0, c)
//             from the truncated geometric law P[D = j] ~ q^j (1 - q); bits
//             before D are 1, bit D is 0, and sampling continues per-bit at
//             D + 1.
//   All remaining positions: one draw each, bit i = (u < threshold(p_i)).
//
// The collapsed prefix has the same joint law as per-bit sampling: the run of
// ones is geometric with the identical success probability, and conditioning
// on the first zero leaves later bits untouched. The only difference is
// rounding: the survival probability is evaluated as a floating product q^c
// (error about c * 2^-53 relative) instead of a product of per-bit 64-bit
// thresholds; both are within float-level distance of the ideal Bernoulli
// product. The payoff is O(1) draws per individual over the border prefix,
// which dominates mid-run sampling cost.

struct SamplingPlan {
  std::vector<std::uint64_t> thresholds;  // per-position acceptance thresholds
  std::uint32_t n = 0;
  std::uint32_t head_run = 0;             // c (0 or >= 2; 1 is folded into per-bit)
  std::uint64_t survive_threshold = 0;    // threshold(q^c) when head_run > 0
  std::vector<std::uint64_t> death_cdf;   // T[j]; D = first j with u < T[j]
  std::vector<std::uint32_t> death_index; // 256-bucket jump table into death_cdf
};

SamplingPlan make_sampling_plan(const FrequencyVector& p);

// First-zero position for a failed prefix-survival draw.
std::uint32_t death_position(const SamplingPlan& plan, std::uint64_t u);

// Per-position acceptance thresholds only (exposed for tests).
std::vector<std::uint64_t> bit_thresholds(const FrequencyVector& p);

// One individual from its dedicated stream; fitness is left unevaluated.
Individual sample_individual(const FrequencyVector& p, const RngStreamSpec& spec);
Individual sample_individual(const SamplingPlan& plan, const RngStreamSpec& spec);

void evaluate_individual(const FitnessKind& kind, Individual& ind);

// lambda individuals with individual_index 0..lambda-1; a pure function of
// (p, params, run_index, iteration) regardless of scheduling.
Population sample_population(const FrequencyVector& p, const UmdaParams& params,
                             std::uint64_t run_index, std::uint64_t iteration);

void evaluate_population(const FitnessKind& kind, Population& pop);

// ---- Batched lane kernels ------------------------------------------------
//
// 64 streams run in lockstep over draw indices; a lane's draws always come
// from its own stream, so a finished lane merely discards further draws and
// never perturbs any observed bit.

inline constexpr std::uint32_t kBatchLanes = 64;

// Capped leading-one run lengths for the contiguous individuals
// [base_index, base_index + count): out_run[j] = min(first-zero position, cap).
// Positions beyond cap are never observed.
void batch_prefix_runs(const SamplingPlan& plan, std::uint32_t cap,
                       std::uint64_t stream_prefix, std::uint64_t base_index,
                       std::uint64_t count, std::uint16_t* out_run);

// Ones-counts over all n positions for contiguous individuals.
void batch_one_max(const SamplingPlan& plan, std::uint64_t stream_prefix,
                   std::uint64_t base_index, std::uint64_t count,
                   std::uint16_t* out_fitness);

// Regenerates the listed individuals in full and adds their bits into
// per-position counters: counts[i] += bit_i summed over the listed streams.
void batch_accumulate_columns(const SamplingPlan& plan, std::uint64_t stream_prefix,
                              const std::uint64_t* individual_indices,
                              std::uint64_t count, std::uint64_t* counts);

// Tie-break key of one individual (the stream's first draw).
inline std::uint64_t individual_key(std::uint64_t prefix, std::uint64_t individual_index) {
  return Xoroshiro128pp::from_seed(stream_seed(prefix, individual_index)).next();
}

}  // namespace umda
