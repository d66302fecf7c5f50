#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "umda/fitness.hpp"
#include "umda/frequency.hpp"
#include "umda/params.hpp"
#include "umda/rng.hpp"
#include "umda/sampling.hpp"

using namespace umda;

namespace {

// A clamped vector with a border prefix of `border` positions followed by
// pseudo-random interior values: the shape mid-run sampling actually sees.
FrequencyVector border_prefix_vector(std::uint32_t n, std::uint32_t border,
                                     std::uint64_t seed) {
  std::vector<double> v(n);
  const double hi = 1.0 - 1.0 / n;
  Xoroshiro128pp g = Xoroshiro128pp::from_seed(seed);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i < border) {
      v[i] = hi;
    } else {
      const double u = static_cast<double>(g.next()) * 0x1p-64;
      v[i] = clamp_frequency(0.1 + 0.8 * u, n);
    }
  }
  return FrequencyVector(std::move(v));
}

}  // namespace

TEST_CASE("plan thresholds equal the per-position acceptance thresholds") {
  const FrequencyVector p = border_prefix_vector(50, 10, 3);
  const SamplingPlan plan = make_sampling_plan(p);
  const std::vector<std::uint64_t> want = bit_thresholds(p);
  REQUIRE(plan.thresholds.size() == 50);
  for (std::uint32_t i = 0; i < 50; ++i) {
    CHECK(plan.thresholds[i] == want[i]);
    CHECK(plan.thresholds[i] == bit_threshold(p[i]));
  }
  CHECK(plan.n == 50);
}

TEST_CASE("plan head run covers the maximal equal-value prefix") {
  SUBCASE("uniform half is one long run") {
    const SamplingPlan plan = make_sampling_plan(FrequencyVector::uniform_half(32));
    CHECK(plan.head_run == 32);
  }
  SUBCASE("border prefix of length 10") {
    const SamplingPlan plan = make_sampling_plan(border_prefix_vector(50, 10, 3));
    CHECK(plan.head_run == 10);
  }
  SUBCASE("a lone first value folds into per-bit sampling") {
    FrequencyVector p(std::vector<double>{0.9, 0.5, 0.5, 0.5});
    CHECK(make_sampling_plan(p).head_run == 0);
  }
  SUBCASE("run of two is collapsed") {
    FrequencyVector p(std::vector<double>{0.75, 0.75, 0.5, 0.25});
    const SamplingPlan plan = make_sampling_plan(p);
    CHECK(plan.head_run == 2);
    // Survival probability is the float product q^c.
    CHECK(plan.survive_threshold == bit_threshold(0.75 * 0.75));
  }
}

TEST_CASE("death position inverts the truncated geometric cdf") {
  const FrequencyVector p(std::vector<double>(8, 0.5));
  const SamplingPlan plan = make_sampling_plan(p);
  REQUIRE(plan.head_run == 8);
  REQUIRE(plan.death_cdf.size() == 8);
  // The cdf is strictly increasing and the inverse is monotone in u.
  for (std::size_t j = 1; j < plan.death_cdf.size(); ++j)
    CHECK(plan.death_cdf[j] > plan.death_cdf[j - 1]);
  std::uint32_t prev = 0;
  for (int k = 0; k < 257; ++k) {
    const std::uint64_t u =
        k == 256 ? ~0ULL : static_cast<std::uint64_t>(k) << 56;
    const std::uint32_t d = death_position(plan, u);
    CHECK(d >= prev);
    CHECK(d < 8);
    prev = d;
  }
  // Exact boundary behaviour: first j with u < cdf[j].
  for (std::size_t j = 0; j < plan.death_cdf.size(); ++j) {
    CHECK(death_position(plan, plan.death_cdf[j] - 1) == j);
    if (j + 1 < plan.death_cdf.size())
      CHECK(death_position(plan, plan.death_cdf[j]) == j + 1);
  }
}

TEST_CASE("scalar sampling is identical with and without a prebuilt plan") {
  const FrequencyVector p = border_prefix_vector(70, 30, 9);
  const SamplingPlan plan = make_sampling_plan(p);
  for (std::uint64_t ind = 0; ind < 40; ++ind) {
    const RngStreamSpec spec{5, 0, 2, ind};
    const Individual a = sample_individual(p, spec);
    const Individual b = sample_individual(plan, spec);
    CHECK(a.bits == b.bits);
    CHECK(a.tiebreak_key == b.tiebreak_key);
    CHECK(a.fitness == kFitnessUnevaluated);
  }
}

TEST_CASE("identical stream coordinates reproduce the identical individual") {
  const FrequencyVector p = border_prefix_vector(33, 5, 1);
  const RngStreamSpec spec{11, 2, 7, 13};
  const Individual a = sample_individual(p, spec);
  const Individual b = sample_individual(p, spec);
  CHECK(a.bits == b.bits);
  CHECK(a.tiebreak_key == b.tiebreak_key);
}

TEST_CASE("batch prefix runs match the scalar sampler bit for bit") {
  // 200 individuals = three full 64-lane batches plus a remainder.
  const std::uint64_t master = 77, run = 1, iter = 4;
  const std::uint64_t prefix = stream_prefix(master, run, iter);
  const std::uint32_t n = 90;
  for (std::uint32_t border : {0u, 2u, 40u}) {
    const FrequencyVector p = border_prefix_vector(n, border, 100 + border);
    const SamplingPlan plan = make_sampling_plan(p);
    for (std::uint32_t cap : {n, 17u}) {
      std::vector<std::uint16_t> got(200);
      batch_prefix_runs(plan, cap, prefix, 0, 200, got.data());
      for (std::uint64_t ind = 0; ind < 200; ++ind) {
        const Individual ref = sample_individual(p, {master, run, iter, ind});
        const std::uint32_t full = ref.bits.leading_one_run();
        CHECK(got[ind] == std::min(full, cap));
      }
    }
  }
}

TEST_CASE("batch prefix runs honour a nonzero base index") {
  const FrequencyVector p = border_prefix_vector(40, 12, 5);
  const SamplingPlan plan = make_sampling_plan(p);
  const std::uint64_t prefix = stream_prefix(1, 0, 0);
  std::vector<std::uint16_t> all(150), tail(70);
  batch_prefix_runs(plan, 40, prefix, 0, 150, all.data());
  batch_prefix_runs(plan, 40, prefix, 80, 70, tail.data());
  for (std::uint32_t j = 0; j < 70; ++j) CHECK(tail[j] == all[80 + j]);
}

TEST_CASE("batch one-max matches scalar ones counts") {
  const FrequencyVector p = border_prefix_vector(100, 25, 8);
  const SamplingPlan plan = make_sampling_plan(p);
  const std::uint64_t master = 13, run = 0, iter = 9;
  const std::uint64_t prefix = stream_prefix(master, run, iter);
  std::vector<std::uint16_t> got(100);
  batch_one_max(plan, prefix, 0, 100, got.data());
  for (std::uint64_t ind = 0; ind < 100; ++ind) {
    const Individual ref = sample_individual(p, {master, run, iter, ind});
    CHECK(got[ind] == ref.bits.count_ones());
  }
}

TEST_CASE("column accumulation regenerates exactly the listed individuals") {
  const FrequencyVector p = border_prefix_vector(60, 20, 2);
  const SamplingPlan plan = make_sampling_plan(p);
  const std::uint64_t master = 4, run = 3, iter = 1;
  const std::uint64_t prefix = stream_prefix(master, run, iter);
  // A scattered, unsorted-free subset (the engine passes sorted indices, but
  // the kernel only requires a list).
  std::vector<std::uint64_t> subset;
  for (std::uint64_t i = 0; i < 300; i += 7) subset.push_back(i);
  std::vector<std::uint64_t> counts(60, 5);  // accumulates on top
  batch_accumulate_columns(plan, prefix, subset.data(), subset.size(), counts.data());
  for (std::uint32_t pos = 0; pos < 60; ++pos) {
    std::uint64_t want = 5;
    for (const std::uint64_t ind : subset) {
      const Individual ref = sample_individual(p, {master, run, iter, ind});
      want += ref.bits.get(pos) ? 1 : 0;
    }
    CHECK(counts[pos] == want);
  }
}

TEST_CASE("individual_key equals the stream's first draw") {
  const FrequencyVector p = border_prefix_vector(16, 4, 6);
  const std::uint64_t prefix = stream_prefix(21, 5, 3);
  for (std::uint64_t ind : {0ULL, 1ULL, 63ULL, 64ULL, 1000ULL}) {
    const Individual ref = sample_individual(p, {21, 5, 3, ind});
    CHECK(individual_key(prefix, ind) == ref.tiebreak_key);
  }
}

TEST_CASE("collapsed prefix preserves per-position marginals") {
  // Long border prefix: every prefix bit goes through the survival/death
  // path, yet its acceptance rate must stay p_i.
  const std::uint32_t n = 24;
  const double hi = 1.0 - 1.0 / n;
  const FrequencyVector p(std::vector<double>(n, hi));
  const std::uint64_t prefix = stream_prefix(31, 0, 0);
  const SamplingPlan plan = make_sampling_plan(p);
  REQUIRE(plan.head_run == n);
  const std::uint64_t m = 40000;
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::uint64_t> idx(m);
  for (std::uint64_t i = 0; i < m; ++i) idx[i] = i;
  batch_accumulate_columns(plan, prefix, idx.data(), m, counts.data());
  const double sigma = std::sqrt(hi * (1 - hi) / m);
  for (std::uint32_t i = 0; i < n; ++i) {
    const double rate = static_cast<double>(counts[i]) / m;
    CHECK(std::fabs(rate - hi) < 5 * sigma + 1.0 / m);
  }
}

TEST_CASE("collapsed prefix preserves the run-length law") {
  // All positions at q: the capped run length is truncated-geometric.
  const std::uint32_t n = 12;
  const double q = 0.75;
  const FrequencyVector p(std::vector<double>(n, q));
  const SamplingPlan plan = make_sampling_plan(p);
  REQUIRE(plan.head_run == n);
  const std::uint64_t m = 60000;
  std::vector<std::uint16_t> runs(m);
  batch_prefix_runs(plan, n, stream_prefix(8, 0, 0), 0, m, runs.data());
  std::vector<double> freq(n + 1, 0.0);
  for (const std::uint16_t r : runs) freq[r] += 1.0 / m;
  for (std::uint32_t r = 0; r <= n; ++r) {
    const double want = r < n ? std::pow(q, r) * (1 - q) : std::pow(q, n);
    const double sigma = std::sqrt(want * (1 - want) / m);
    CHECK(std::fabs(freq[r] - want) < 5 * sigma + 2.0 / m);
  }
}

TEST_CASE("sample_population is a pure function of its coordinates") {
  UmdaParams params;
  params.n = 30;
  params.mu = 5;
  params.lambda = 100;
  params.max_iterations = 10;
  params.master_seed = 17;
  const FrequencyVector p = border_prefix_vector(30, 6, 4);
  const Population a = sample_population(p, params, 2, 5);
  const Population b = sample_population(p, params, 2, 5);
  REQUIRE(a.size() == 100);
  CHECK(a.iteration == 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.individuals[i].bits == b.individuals[i].bits);
    CHECK(a.individuals[i].tiebreak_key == b.individuals[i].tiebreak_key);
    CHECK(a.individuals[i].fitness == kFitnessUnevaluated);
  }
  // Different run index: different population.
  const Population c = sample_population(p, params, 3, 5);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    any_diff = any_diff || !(a.individuals[i].bits == c.individuals[i].bits);
  CHECK(any_diff);
}

TEST_CASE("evaluate_population fills cached fitness per kind") {
  UmdaParams params;
  params.n = 20;
  params.mu = 2;
  params.lambda = 40;
  params.max_iterations = 5;
  params.master_seed = 3;
  const FrequencyVector p = FrequencyVector::uniform_half(20);
  Population pop = sample_population(p, params, 0, 0);
  evaluate_population(FitnessKind::leading_ones(), pop);
  for (const Individual& ind : pop.individuals) {
    CHECK(ind.fitness == static_cast<std::int64_t>(ind.bits.leading_one_run()));
  }
  Population pop2 = sample_population(p, params, 0, 0);
  evaluate_population(FitnessKind::one_max(), pop2);
  for (const Individual& ind : pop2.individuals)
    CHECK(ind.fitness == static_cast<std::int64_t>(ind.bits.count_ones()));
}
