#include "umda/sampling.hpp"

#include <algorithm>

namespace umda {

std::vector<std::uint64_t> bit_thresholds(const FrequencyVector& p) {
  std::vector<std::uint64_t> thr(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) thr[i] = bit_threshold(p.values[i]);
  return thr;
}

SamplingPlan make_sampling_plan(const FrequencyVector& p) {
  SamplingPlan plan;
  plan.n = p.size();
  plan.thresholds = bit_thresholds(p);
  if (plan.n == 0) return plan;
  const double q = p.values[0];
  std::uint32_t c = 1;
  while (c < plan.n && p.values[c] == q) ++c;
  if (c < 2 || q <= 0.0 || q >= 1.0) return plan;  // per-bit only
  plan.head_run = c;
  // Survival curve S[j] = q^j as a running product: deterministic (plain IEEE
  // multiplies) and accurate to ~c ulp, which is all the protocol promises.
  std::vector<double> surv(c + 1);
  surv[0] = 1.0;
  for (std::uint32_t j = 0; j < c; ++j) surv[j + 1] = surv[j] * q;
  plan.survive_threshold = bit_threshold(surv[c]);
  const double denom = 1.0 - surv[c];
  plan.death_cdf.resize(c);
  for (std::uint32_t j = 0; j < c; ++j)
    plan.death_cdf[j] = bit_threshold((1.0 - surv[j + 1]) / denom);
  // Jump table: bucket k starts the lookup at the smallest j whose CDF value
  // exceeds the bucket base, so a query walks only within one bucket span and
  // the expected probe count stays O(1) for any skew.
  plan.death_index.resize(256);
  std::uint32_t j = 0;
  for (std::uint32_t k = 0; k < 256; ++k) {
    const std::uint64_t base = static_cast<std::uint64_t>(k) << 56;
    while (j + 1 < c && plan.death_cdf[j] <= base) ++j;
    plan.death_index[k] = j;
  }
  return plan;
}

std::uint32_t death_position(const SamplingPlan& plan, std::uint64_t u) {
  const std::uint32_t c = plan.head_run;
  const std::uint64_t* T = plan.death_cdf.data();
  std::uint32_t j = plan.death_index[u >> 56];
  while (j + 1 < c && u >= T[j]) ++j;
  return j;
}

namespace {

// Writes bits according to the protocol; g must be positioned after the key
// draw. Shared by the scalar sampler and the batch fallback paths.
void sample_bits(const SamplingPlan& plan, Xoroshiro128pp& g, PackedBits& out) {
  std::uint32_t i = 0;
  if (plan.head_run > 0) {
    if (g.next() < plan.survive_threshold) {
      out.set_prefix_ones(plan.head_run);
      i = plan.head_run;
    } else {
      const std::uint32_t d = death_position(plan, g.next());
      out.set_prefix_ones(d);
      i = d + 1;  // bit d stays 0
    }
  }
  for (; i < plan.n; ++i)
    if (g.next() < plan.thresholds[i]) out.set(i, true);
}

}  // namespace

Individual sample_individual(const SamplingPlan& plan, const RngStreamSpec& spec) {
  Individual ind;
  ind.bits = PackedBits(plan.n);
  Xoroshiro128pp g = stream_generator(spec);
  ind.tiebreak_key = g.next();
  sample_bits(plan, g, ind.bits);
  return ind;
}

Individual sample_individual(const FrequencyVector& p, const RngStreamSpec& spec) {
  return sample_individual(make_sampling_plan(p), spec);
}

void evaluate_individual(const FitnessKind& kind, Individual& ind) {
  ind.fitness = evaluate_fitness(kind, ind.bits);
}

Population sample_population(const FrequencyVector& p, const UmdaParams& params,
                             std::uint64_t run_index, std::uint64_t iteration) {
  params.validate();
  const SamplingPlan plan = make_sampling_plan(p);
  Population pop;
  pop.iteration = iteration;
  pop.individuals.reserve(params.lambda);
  for (std::uint64_t j = 0; j < params.lambda; ++j)
    pop.individuals.push_back(
        sample_individual(plan, RngStreamSpec{params.master_seed, run_index, iteration, j}));
  return pop;
}

void evaluate_population(const FitnessKind& kind, Population& pop) {
  for (auto& ind : pop.individuals) evaluate_individual(kind, ind);
}

namespace {

constexpr std::uint32_t kL = kBatchLanes;

struct alignas(64) LaneState {
  std::uint64_t s0[kL];
  std::uint64_t s1[kL];
};

// Seeds lane l with the stream of seeds[l] and consumes the key draw,
// mirroring the scalar protocol.
inline void init_lanes_from_seeds(LaneState& st, const std::uint64_t* seeds) {
  for (std::uint32_t l = 0; l < kL; ++l) {
    std::uint64_t a = mix64(seeds[l]);
    std::uint64_t b = mix64(seeds[l] ^ 0x6a09e667f3bcc909ULL);
    if (a == 0 && b == 0) b = 0x9e3779b97f4a7c15ULL;
    st.s0[l] = a;
    st.s1[l] = b;
  }
  for (std::uint32_t l = 0; l < kL; ++l) {  // key draw, value unused here
    const std::uint64_t a = st.s0[l];
    std::uint64_t b = st.s1[l];
    b ^= a;
    st.s0[l] = Xoroshiro128pp::rotl(a, 49) ^ b ^ (b << 21);
    st.s1[l] = Xoroshiro128pp::rotl(b, 28);
  }
}

inline void init_lanes(LaneState& st, std::uint64_t prefix, std::uint64_t base) {
  alignas(64) std::uint64_t seeds[kL];
  for (std::uint32_t l = 0; l < kL; ++l) seeds[l] = mix64(prefix ^ (base + l));
  init_lanes_from_seeds(st, seeds);
}

// One lockstep draw for every lane.
inline void lane_draws(LaneState& st, std::uint64_t* out) {
  for (std::uint32_t l = 0; l < kL; ++l) {
    const std::uint64_t a = st.s0[l];
    std::uint64_t b = st.s1[l];
    out[l] = Xoroshiro128pp::rotl(a + b, 17) + a;
    b ^= a;
    st.s0[l] = Xoroshiro128pp::rotl(a, 49) ^ b ^ (b << 21);
    st.s1[l] = Xoroshiro128pp::rotl(b, 28);
  }
}

}  // namespace

void batch_prefix_runs(const SamplingPlan& plan, std::uint32_t cap,
                       std::uint64_t prefix, std::uint64_t base_index,
                       std::uint64_t count, std::uint16_t* out_run) {
  const std::uint32_t c = plan.head_run;
  for (std::uint64_t done = 0; done < count; done += kL) {
    const std::uint32_t valid =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(kL, count - done));
    LaneState st;
    init_lanes(st, prefix, base_index + done);
    alignas(64) std::uint64_t alive[kL];
    alignas(64) std::uint64_t run[kL];
    alignas(64) std::uint64_t stash[kL];
    alignas(64) std::uint8_t died_in_head[kL] = {};
    std::uint32_t start = 0;
    if (c > 0) {
      // Survival draw, then the shared draw that is the death-position pick
      // for failed lanes and the bit at position c for survivors.
      alignas(64) std::uint64_t u[kL];
      lane_draws(st, u);
      const std::uint64_t sthr = plan.survive_threshold;
      for (std::uint32_t l = 0; l < kL; ++l) {
        const std::uint64_t m = static_cast<std::uint64_t>(0) -
                                static_cast<std::uint64_t>(u[l] < sthr);
        alive[l] = m;
        run[l] = static_cast<std::uint64_t>(c) & m;
        died_in_head[l] = static_cast<std::uint8_t>(1 - (m & 1));
      }
      lane_draws(st, stash);
      if (c < cap) {
        const std::uint64_t thr = plan.thresholds[c];
        for (std::uint32_t l = 0; l < kL; ++l) {
          alive[l] &= static_cast<std::uint64_t>(0) -
                      static_cast<std::uint64_t>(stash[l] < thr);
          run[l] += alive[l] & 1ULL;
        }
        start = c + 1;
      } else {
        start = cap;  // survivors already hold run = c >= cap
      }
    } else {
      for (std::uint32_t l = 0; l < kL; ++l) alive[l] = ~0ULL;
      for (std::uint32_t l = 0; l < kL; ++l) run[l] = 0;
    }
    alignas(64) std::uint64_t u[kL];
    for (std::uint32_t i = start; i < cap; ++i) {
      const std::uint64_t thr = plan.thresholds[i];
      lane_draws(st, u);
      for (std::uint32_t l = 0; l < kL; ++l) {
        alive[l] &= static_cast<std::uint64_t>(0) -
                    static_cast<std::uint64_t>(u[l] < thr);
        run[l] += alive[l] & 1ULL;
      }
      if ((i & 7u) == 7u) {
        std::uint64_t any = 0;
        for (std::uint32_t l = 0; l < kL; ++l) any |= alive[l];
        if (any == 0) break;
      }
    }
    for (std::uint32_t l = 0; l < valid; ++l) {
      std::uint64_t r = died_in_head[l]
                            ? std::min<std::uint64_t>(death_position(plan, stash[l]), cap)
                            : std::min<std::uint64_t>(run[l], cap);
      out_run[done + l] = static_cast<std::uint16_t>(r);
    }
  }
}

namespace {

// Full-bit scalar accumulation of one stream into the column counters.
void scalar_accumulate(const SamplingPlan& plan, std::uint64_t prefix,
                       std::uint64_t individual_index, std::uint64_t* counts) {
  Xoroshiro128pp g = Xoroshiro128pp::from_seed(stream_seed(prefix, individual_index));
  (void)g.next();  // key
  PackedBits bits(plan.n);
  sample_bits(plan, g, bits);
  for (std::uint32_t i = 0; i < plan.n; ++i)
    counts[i] += static_cast<std::uint64_t>(bits.get(i));
}

}  // namespace

void batch_one_max(const SamplingPlan& plan, std::uint64_t prefix,
                   std::uint64_t base_index, std::uint64_t count,
                   std::uint16_t* out_fitness) {
  const std::uint32_t n = plan.n;
  if (plan.head_run > 0) {
    // Heterogeneous per-lane resume positions after the head are not worth a
    // lockstep variant: ones-count runs are desk-scale.
    for (std::uint64_t j = 0; j < count; ++j) {
      Xoroshiro128pp g = Xoroshiro128pp::from_seed(stream_seed(prefix, base_index + j));
      (void)g.next();
      PackedBits bits(n);
      sample_bits(plan, g, bits);
      out_fitness[j] = static_cast<std::uint16_t>(bits.count_ones());
    }
    return;
  }
  for (std::uint64_t done = 0; done < count; done += kL) {
    const std::uint32_t valid =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(kL, count - done));
    LaneState st;
    init_lanes(st, prefix, base_index + done);
    alignas(64) std::uint64_t ones[kL];
    alignas(64) std::uint64_t u[kL];
    for (std::uint32_t l = 0; l < kL; ++l) ones[l] = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::uint64_t thr = plan.thresholds[i];
      lane_draws(st, u);
      for (std::uint32_t l = 0; l < kL; ++l)
        ones[l] += static_cast<std::uint64_t>(u[l] < thr);
    }
    for (std::uint32_t l = 0; l < valid; ++l)
      out_fitness[done + l] = static_cast<std::uint16_t>(ones[l]);
  }
}

void batch_accumulate_columns(const SamplingPlan& plan, std::uint64_t prefix,
                              const std::uint64_t* individual_indices,
                              std::uint64_t count, std::uint64_t* counts) {
  const std::uint32_t n = plan.n;
  const std::uint32_t c = plan.head_run;
  for (std::uint64_t done = 0; done < count; done += kL) {
    const std::uint32_t valid =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(kL, count - done));
    LaneState st;
    {
      alignas(64) std::uint64_t seeds[kL];
      for (std::uint32_t l = 0; l < kL; ++l) {
        const std::uint64_t idx = individual_indices[done + (l < valid ? l : valid - 1)];
        seeds[l] = mix64(prefix ^ idx);
      }
      init_lanes_from_seeds(st, seeds);
    }
    alignas(64) std::uint64_t active[kL];  // 0/1 per lane: contributes to sums
    for (std::uint32_t l = 0; l < kL; ++l) active[l] = l < valid ? 1ULL : 0ULL;
    std::uint32_t start = 0;
    if (c > 0) {
      alignas(64) std::uint64_t u[kL];
      lane_draws(st, u);
      const std::uint64_t sthr = plan.survive_threshold;
      std::uint64_t head_survivors = 0;
      for (std::uint32_t l = 0; l < kL; ++l) {
        const std::uint64_t s = static_cast<std::uint64_t>(u[l] < sthr);
        if (l < valid && s == 0)  // rare: full scalar replay of that stream
          scalar_accumulate(plan, prefix, individual_indices[done + l], counts);
        active[l] &= s;
        head_survivors += active[l];
      }
      for (std::uint32_t i = 0; i < c; ++i) counts[i] += head_survivors;
      start = c;
    }
    alignas(64) std::uint64_t u[kL];
    for (std::uint32_t i = start; i < n; ++i) {
      const std::uint64_t thr = plan.thresholds[i];
      lane_draws(st, u);
      std::uint64_t col = 0;
      for (std::uint32_t l = 0; l < kL; ++l)
        col += static_cast<std::uint64_t>(u[l] < thr) & active[l];
      counts[i] += col;
    }
  }
}

}  // namespace umda
