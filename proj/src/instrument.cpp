#include "umda/instrument.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

#include "umda/fitness.hpp"

namespace umda {

std::optional<std::uint32_t> critical_position(const FrequencyVector& p) {
  const std::uint32_t n = p.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!at_upper_border(p[i], n)) return i + 1;
  }
  return std::nullopt;
}

BandStats band_stats(const FrequencyVector& p) {
  const std::uint32_t n = p.size();
  BandStats s;
  s.min_frequency = p.min_value();
  for (std::uint32_t i = 0; i < n; ++i) {
    const double v = p[i];
    if (at_upper_border(v, n)) {
      ++s.count_at_upper_border;
    } else if (v < 0.25) {
      ++s.count_below_quarter;
    } else if (v > 0.25 && v < 0.75) {
      ++s.count_in_middle_band;
    }
    // Entries in [3/4, border) or exactly at 1/4 fall through: they are the
    // residual class, recoverable as n minus the three counts.
  }
  return s;
}

std::uint32_t max_selection_relevant(const Population& pop, std::uint32_t mu,
                                     const FitnessKind& kind) {
  if (kind.tag == FitnessTag::one_max) {
    throw std::invalid_argument(
        "max_selection_relevant: fitness must be prefix-valued (leading-ones "
        "family)");
  }
  if (pop.individuals.empty()) {
    throw std::invalid_argument("max_selection_relevant: empty population");
  }
  const std::uint32_t n = pop.individuals.front().bits.n;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (const Individual& ind : pop.individuals) {
    counts[static_cast<std::size_t>(ind.fitness)] += 1;
  }
  return max_selection_relevant_from_histogram(counts, mu, n);
}

std::uint32_t max_selection_relevant_from_histogram(
    const std::vector<std::uint64_t>& counts, std::uint64_t mu,
    std::uint32_t n) {
  // suffix = number of individuals with fitness >= v, accumulated downward;
  // the answer is 1 + the largest v in [0, n-1] whose suffix count reaches mu
  // (v = i - 1 leading ones supports position i, and i is capped at n).
  std::uint64_t suffix = 0;
  for (std::size_t v = counts.size(); v-- > 0;) {
    suffix += counts[v];
    if (v <= static_cast<std::size_t>(n) - 1 && suffix >= mu) {
      return static_cast<std::uint32_t>(v) + 1;
    }
  }
  // Reachable only when mu exceeds the population size, which params forbid.
  return 1;
}

bool selection_relevant_oracle(const Population& pop, std::uint32_t mu,
                               std::uint32_t i) {
  if (i == 0) throw std::invalid_argument("selection_relevant_oracle: i >= 1");
  std::uint64_t qualifying = 0;
  for (const Individual& ind : pop.individuals) {
    bool prefix_ones = true;
    for (std::uint32_t j = 0; j + 1 < i; ++j) {
      if (ind.bits.get(j) == 0) {
        prefix_ones = false;
        break;
      }
    }
    if (prefix_ones) ++qualifying;
  }
  return qualifying >= mu;
}

std::map<std::uint32_t, std::uint32_t> first_selection_relevant_iterations(
    const RunTrace& trace, std::uint32_t n) {
  std::map<std::uint32_t, std::uint32_t> first;
  std::uint32_t reached = 0;
  for (const IterationRecord& rec : trace.records) {
    if (!rec.max_selection_relevant) continue;
    const std::uint32_t m = std::min(*rec.max_selection_relevant, n);
    for (std::uint32_t pos = reached + 1; pos <= m; ++pos) {
      first.emplace(pos, rec.iteration);
    }
    reached = std::max(reached, m);
  }
  return first;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_trace_header(std::ostream& out) {
  out << "run_id,t,critical_pos,max_sel_relevant,min_freq,n_at_upper,"
         "n_below_quarter,n_middle,best_fitness,optimum_sampled\n";
}

void write_trace_row(std::ostream& out, std::uint64_t run_id,
                     const IterationRecord& rec) {
  out << run_id << ',' << rec.iteration << ',';
  if (rec.critical_position) out << *rec.critical_position;
  out << ',';
  if (rec.max_selection_relevant) out << *rec.max_selection_relevant;
  out << ',' << format_double(rec.min_frequency) << ','
      << rec.count_at_upper_border << ',' << rec.count_below_quarter << ','
      << rec.count_in_middle_band << ',' << rec.best_fitness << ','
      << (rec.optimum_sampled ? 1 : 0) << '\n';
}

void write_trace_csv(std::ostream& out, std::uint64_t run_id,
                     const RunTrace& trace) {
  write_trace_header(out);
  for (const IterationRecord& rec : trace.records) {
    write_trace_row(out, run_id, rec);
  }
}

}  // namespace umda
