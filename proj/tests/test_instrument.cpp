#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "umda/fitness.hpp"
#include "umda/frequency.hpp"
#include "umda/instrument.hpp"
#include "umda/params.hpp"
#include "umda/sampling.hpp"

using namespace umda;

TEST_CASE("critical position is the first entry off the upper border") {
  const std::uint32_t n = 10;
  const double hi = 1.0 - 1.0 / n;
  CHECK(critical_position(FrequencyVector::uniform_half(n)) == 1);
  std::vector<double> v(n, hi);
  CHECK(!critical_position(FrequencyVector(v)).has_value());
  v[3] = 0.5;
  CHECK(critical_position(FrequencyVector(v)) == 4);
  v[3] = hi;
  v[9] = 0.7;
  CHECK(critical_position(FrequencyVector(v)) == 10);
}

TEST_CASE("border equality uses the shared tolerance") {
  const std::uint32_t n = 10;
  const double hi = 1.0 - 1.0 / n;
  std::vector<double> v(n, hi);
  v[0] = hi - 1e-13;  // inside tolerance: still the border
  CHECK(!critical_position(FrequencyVector(v)).has_value());
  v[0] = hi - 1e-10;  // outside tolerance
  CHECK(critical_position(FrequencyVector(v)) == 1);
}

TEST_CASE("band statistics partition with border priority") {
  // n = 8: border value 7/8 = 0.875.
  const FrequencyVector p(std::vector<double>{
      0.875,  // upper border
      0.2,    // below 1/4
      0.5,    // open middle
      0.25,   // exactly 1/4: residual
      0.75,   // exactly 3/4: residual (middle band is open)
      0.8,    // in [3/4, border): residual
      0.125,  // below 1/4 (also the minimum)
      0.875,  // upper border
  });
  const BandStats s = band_stats(p);
  CHECK(s.count_at_upper_border == 2);
  CHECK(s.count_below_quarter == 2);
  CHECK(s.count_in_middle_band == 1);
  CHECK(8 - s.count_at_upper_border - s.count_below_quarter -
            s.count_in_middle_band ==
        3);
  CHECK(s.min_frequency == 0.125);
}

TEST_CASE("n = 2 puts one half on the border, not in the middle") {
  const BandStats s = band_stats(FrequencyVector::uniform_half(2));
  CHECK(s.count_at_upper_border == 2);
  CHECK(s.count_in_middle_band == 0);
  CHECK(s.min_frequency == 0.5);
}

namespace {

Population sampled_population(std::uint32_t n, std::uint64_t lambda,
                              std::uint64_t seed, const FitnessKind& kind) {
  UmdaParams params;
  params.n = n;
  params.mu = 1;
  params.lambda = lambda;
  params.max_iterations = 1;
  params.master_seed = seed;
  Population pop =
      sample_population(FrequencyVector::uniform_half(n), params, 0, 0);
  evaluate_population(kind, pop);
  return pop;
}

}  // namespace

TEST_CASE("max selection-relevant position agrees with the literal recount") {
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    for (const FitnessKind& kind :
         {FitnessKind::leading_ones(),
          FitnessKind::neutral_suffix_leading_ones(3)}) {
      const Population pop = sampled_population(12, 60, seed, kind);
      for (const std::uint32_t mu : {1u, 5u, 30u, 60u}) {
        const std::uint32_t got = max_selection_relevant(pop, mu, kind);
        CHECK(got >= 1);
        CHECK(got <= 12);
        CHECK(selection_relevant_oracle(pop, mu, got));
        if (got < 12) CHECK(!selection_relevant_oracle(pop, mu, got + 1));
      }
    }
  }
}

TEST_CASE("histogram and population forms agree") {
  const FitnessKind kind = FitnessKind::leading_ones();
  const Population pop = sampled_population(10, 40, 9, kind);
  std::vector<std::uint64_t> counts(11, 0);
  for (const Individual& ind : pop.individuals)
    counts[static_cast<std::size_t>(ind.fitness)] += 1;
  for (const std::uint32_t mu : {1u, 7u, 40u}) {
    CHECK(max_selection_relevant(pop, mu, kind) ==
          max_selection_relevant_from_histogram(counts, mu, 10));
  }
}

TEST_CASE("histogram scan handles the extreme fitness profiles") {
  const std::uint32_t n = 6;
  std::vector<std::uint64_t> all_optimal(n + 1, 0);
  all_optimal[n] = 20;
  CHECK(max_selection_relevant_from_histogram(all_optimal, 5, n) == n);
  std::vector<std::uint64_t> all_zero(n + 1, 0);
  all_zero[0] = 20;
  CHECK(max_selection_relevant_from_histogram(all_zero, 5, n) == 1);
  // 4 individuals at fitness 3, 6 at fitness 0, mu = 5: only position 1 is
  // supported by 10 >= 5, positions up to 4 by just 4 < 5.
  std::vector<std::uint64_t> mixed(n + 1, 0);
  mixed[3] = 4;
  mixed[0] = 6;
  CHECK(max_selection_relevant_from_histogram(mixed, 5, n) == 1);
  CHECK(max_selection_relevant_from_histogram(mixed, 4, n) == 4);
}

TEST_CASE("one_max populations are rejected, as are empty ones") {
  const Population pop = sampled_population(8, 10, 1, FitnessKind::one_max());
  CHECK_THROWS_AS(max_selection_relevant(pop, 2, FitnessKind::one_max()),
                  std::invalid_argument);
  Population empty;
  CHECK_THROWS_AS(max_selection_relevant(empty, 1, FitnessKind::leading_ones()),
                  std::invalid_argument);
}

namespace {

IterationRecord record_with_max_sel(std::uint32_t t, std::uint32_t max_sel) {
  IterationRecord rec;
  rec.iteration = t;
  rec.max_selection_relevant = max_sel;
  return rec;
}

}  // namespace

TEST_CASE("first selection-relevant iterations track the high-water mark") {
  RunTrace trace;
  trace.records.push_back(record_with_max_sel(0, 2));
  trace.records.push_back(record_with_max_sel(1, 5));
  trace.records.push_back(record_with_max_sel(2, 4));  // regression: no effect
  trace.records.push_back(record_with_max_sel(3, 7));
  const std::map<std::uint32_t, std::uint32_t> first =
      first_selection_relevant_iterations(trace, 10);
  REQUIRE(first.size() == 7);
  CHECK(first.at(1) == 0);
  CHECK(first.at(2) == 0);
  CHECK(first.at(3) == 1);
  CHECK(first.at(4) == 1);
  CHECK(first.at(5) == 1);
  CHECK(first.at(6) == 3);
  CHECK(first.at(7) == 3);
  CHECK(first.count(8) == 0);
}

TEST_CASE("records without the statistic leave the map untouched") {
  RunTrace trace;
  IterationRecord rec;
  rec.iteration = 0;
  trace.records.push_back(rec);  // one_max style: no max_selection_relevant
  trace.records.push_back(record_with_max_sel(1, 3));
  const auto first = first_selection_relevant_iterations(trace, 5);
  REQUIRE(first.size() == 3);
  CHECK(first.at(1) == 1);
  CHECK(first.at(3) == 1);
}

TEST_CASE("trace rows serialize to the fixed golden form") {
  IterationRecord rec;
  rec.iteration = 2;
  rec.critical_position = 5;
  rec.max_selection_relevant = 7;
  rec.min_frequency = 0.25;
  rec.count_at_upper_border = 4;
  rec.count_below_quarter = 1;
  rec.count_in_middle_band = 2;
  rec.best_fitness = 9;
  rec.optimum_sampled = false;

  std::ostringstream out;
  write_trace_row(out, 3, rec);
  CHECK(out.str() == "3,2,5,7,0.25,4,1,2,9,0\n");
}

TEST_CASE("absent optionals serialize as empty fields") {
  IterationRecord rec;
  rec.iteration = 0;
  rec.min_frequency = 0.5;
  rec.count_at_upper_border = 1;
  rec.best_fitness = 4;
  rec.optimum_sampled = true;
  std::ostringstream out;
  write_trace_row(out, 0, rec);
  CHECK(out.str() == "0,0,,,0.5,1,0,0,4,1\n");
}

TEST_CASE("the header names every column in order") {
  std::ostringstream out;
  write_trace_header(out);
  CHECK(out.str() ==
        "run_id,t,critical_pos,max_sel_relevant,min_freq,n_at_upper,"
        "n_below_quarter,n_middle,best_fitness,optimum_sampled\n");
}

TEST_CASE("write_trace_csv is header plus one row per record") {
  RunTrace trace;
  trace.records.push_back(record_with_max_sel(0, 1));
  trace.records.push_back(record_with_max_sel(1, 2));
  std::ostringstream out;
  write_trace_csv(out, 9, trace);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3);
  CHECK(out.str().rfind("run_id,", 0) == 0);
}

TEST_CASE("format_double is shortest-round-trip and stable") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(0.875) == "0.875");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(0.0) == "0");
  // Round-trip: parsing the string recovers the exact bits.
  for (const double v : {0.1, 0.7, 1.0 - 1.0 / 3.0, 1e-9, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
