#include "umda/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace umda {

namespace {

// Total order realizing the uniform tie policy: better fitness first, then
// the fresh random key, then the sampling index as a final strict tiebreak.
bool precedes(const Individual& a, std::uint32_t ia, const Individual& b,
              std::uint32_t ib) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  if (a.tiebreak_key != b.tiebreak_key) return a.tiebreak_key < b.tiebreak_key;
  return ia < ib;
}

}  // namespace

std::vector<Individual> select_top_mu(const Population& pop, std::uint32_t mu) {
  const std::size_t lambda = pop.size();
  if (mu > lambda) {
    throw std::invalid_argument("select_top_mu: mu exceeds population size");
  }
  for (const Individual& ind : pop.individuals) {
    if (ind.fitness == kFitnessUnevaluated) {
      throw std::invalid_argument("select_top_mu: population not evaluated");
    }
  }
  std::vector<std::uint32_t> order(lambda);
  std::iota(order.begin(), order.end(), 0u);
  std::partial_sort(order.begin(), order.begin() + mu, order.end(),
                    [&](std::uint32_t a, std::uint32_t b) {
                      return precedes(pop.individuals[a], a,
                                      pop.individuals[b], b);
                    });
  std::vector<Individual> selected;
  selected.reserve(mu);
  for (std::uint32_t j = 0; j < mu; ++j) {
    selected.push_back(pop.individuals[order[j]]);
  }
  return selected;
}

FrequencyVector update_frequencies(const std::vector<Individual>& selected,
                                   std::uint32_t n, std::uint32_t mu) {
  if (selected.size() != mu || mu == 0) {
    throw std::invalid_argument("update_frequencies: need exactly mu parents");
  }
  std::vector<std::uint64_t> counts(n, 0);
  for (const Individual& ind : selected) {
    for (std::uint32_t i = 0; i < n; ++i) counts[i] += ind.bits.get(i);
  }
  std::vector<double> values(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    values[i] = clamp_frequency(static_cast<double>(counts[i]) /
                                    static_cast<double>(mu),
                                n);
  }
  return FrequencyVector(std::move(values));
}

RunOutcome run_umda(const UmdaParams& params, const FitnessKind& kind,
                    const RunOptions& opts) {
  params.validate();
  kind.validate(params.n);

  const std::uint32_t n = params.n;
  const std::uint64_t lambda = params.lambda;
  const std::uint64_t mu = params.mu;
  const bool prefix_valued = kind.tag != FitnessTag::one_max;
  // For prefix-valued fitness the pass-1 kernel caps runs at the scored
  // prefix, which IS the fitness value (min of the true run and the cap).
  const std::uint32_t scored_len = kind.scored_prefix(n);
  const std::uint16_t optimum =
      static_cast<std::uint16_t>(kind.optimum_value(n));

  FrequencyVector p = opts.initial_frequencies
                          ? *opts.initial_frequencies
                          : FrequencyVector::uniform_half(n);
  if (p.size() != n) {
    throw std::invalid_argument("run_umda: initial frequency vector size");
  }
  const double border_lo = 1.0 / static_cast<double>(n);
  const double border_hi = 1.0 - border_lo;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (p[i] < border_lo - kFrequencyTolerance ||
        p[i] > border_hi + kFrequencyTolerance) {
      throw std::invalid_argument("run_umda: initial frequencies not clamped");
    }
  }

  RunOutcome out;
  std::vector<std::uint16_t> fitness_vals(lambda);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> selected;
  selected.reserve(mu);
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ties;  // (key, index)

  for (std::uint64_t t = 0; t < params.max_iterations; ++t) {
    const SamplingPlan plan = make_sampling_plan(p);
    const std::uint64_t prefix =
        stream_prefix(params.master_seed, opts.run_index, t);

    // Pass 1: one fitness value per offspring, no bits retained.
    if (prefix_valued) {
      batch_prefix_runs(plan, scored_len, prefix, 0, lambda,
                        fitness_vals.data());
    } else {
      batch_one_max(plan, prefix, 0, lambda, fitness_vals.data());
    }

    std::fill(hist.begin(), hist.end(), 0);
    for (std::uint64_t j = 0; j < lambda; ++j) hist[fitness_vals[j]] += 1;

    std::int64_t best = 0;
    for (std::int64_t v = n; v >= 0; --v) {
      if (hist[v] != 0) {
        best = v;
        break;
      }
    }
    const bool optimum_here = hist[optimum] != 0;
    if (optimum_here) {
      for (std::uint64_t j = 0; j < lambda; ++j) {
        if (fitness_vals[j] == optimum) {
          out.first_optimum_eval_index = t * lambda + j + 1;
          break;
        }
      }
    }

    // Selection: indices of the mu best under (fitness desc, key asc, index
    // asc). Only the tie class at the cutoff value ever needs keys.
    selected.clear();
    if (mu == lambda) {
      selected.resize(lambda);
      std::iota(selected.begin(), selected.end(), std::uint64_t{0});
    } else {
      std::uint64_t above = 0;  // count of fitness strictly better than F
      std::int64_t cutoff = 0;
      for (std::int64_t v = n; v >= 0; --v) {
        if (above + hist[v] >= mu) {
          cutoff = v;
          break;
        }
        above += hist[v];
      }
      const std::uint64_t winners_at_cutoff = mu - above;
      ties.clear();
      for (std::uint64_t j = 0; j < lambda; ++j) {
        const std::int64_t f = fitness_vals[j];
        if (f > cutoff) {
          selected.push_back(j);
        } else if (f == cutoff) {
          ties.emplace_back(0, j);
        }
      }
      if (winners_at_cutoff > 0) {
        for (auto& kv : ties) kv.first = individual_key(prefix, kv.second);
        if (winners_at_cutoff < ties.size()) {
          std::nth_element(ties.begin(), ties.begin() + winners_at_cutoff,
                           ties.end());
        }
        for (std::uint64_t j = 0; j < winners_at_cutoff; ++j) {
          selected.push_back(ties[j].second);
        }
        std::sort(selected.begin(), selected.end());
      }
    }

    // Pass 2: per-position one-counts over the selected streams only.
    std::fill(counts.begin(), counts.end(), 0);
    batch_accumulate_columns(plan, prefix, selected.data(), mu, counts.data());

    std::vector<double> next_values(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      next_values[i] = clamp_frequency(
          static_cast<double>(counts[i]) / static_cast<double>(mu), n);
    }
    FrequencyVector p_next(std::move(next_values));

    IterationRecord rec;
    rec.iteration = static_cast<std::uint32_t>(t);
    rec.critical_position = critical_position(p_next);
    if (prefix_valued) {
      rec.max_selection_relevant =
          max_selection_relevant_from_histogram(hist, mu, n);
    }
    const BandStats bs = band_stats(p_next);
    rec.min_frequency = bs.min_frequency;
    rec.count_at_upper_border = bs.count_at_upper_border;
    rec.count_below_quarter = bs.count_below_quarter;
    rec.count_in_middle_band = bs.count_in_middle_band;
    rec.best_fitness = best;
    rec.optimum_sampled = optimum_here;

    if (opts.collect_trace) out.trace.records.push_back(rec);
    if (opts.observer) opts.observer(rec, p_next);

    p = std::move(p_next);
    out.iterations_completed = static_cast<std::uint32_t>(t) + 1;
    if (optimum_here) {
      out.found_optimum = true;
      break;
    }
  }

  out.evaluations_used =
      static_cast<std::uint64_t>(out.iterations_completed) * lambda;
  out.final_frequencies = std::move(p);
  return out;
}

}  // namespace umda
