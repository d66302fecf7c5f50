#pragma once

#include <cstdint>

namespace umda {

// 64-bit bijective finalizer (SplitMix64 step). Used both to absorb stream
// coordinates and to expand a seed into generator state.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Coordinates of one deterministic stream. Distinct tuples give independent
// streams; equal tuples give bit-identical draws regardless of scheduling.
struct RngStreamSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t run_index = 0;
  std::uint64_t iteration = 0;
  std::uint64_t individual_index = 0;
};

// The (master_seed, run, iteration) part of the key, shared by all individuals
// of one sampling phase. Hoisting it out of the per-individual path keeps
// stream setup to a single mix64 per individual.
inline constexpr std::uint64_t stream_prefix(std::uint64_t master_seed,
                                             std::uint64_t run_index,
                                             std::uint64_t iteration) noexcept {
  return mix64(mix64(mix64(master_seed) ^ run_index) ^ iteration);
}

inline constexpr std::uint64_t stream_seed(std::uint64_t prefix,
                                           std::uint64_t individual_index) noexcept {
  return mix64(prefix ^ individual_index);
}

inline constexpr std::uint64_t stream_seed(const RngStreamSpec& spec) noexcept {
  return stream_seed(stream_prefix(spec.master_seed, spec.run_index, spec.iteration),
                     spec.individual_index);
}

// xoroshiro128++ by Blackman & Vigna. Small state (two words per stream, which
// the batch sampler keeps in lane arrays), period 2^128 - 1, passes standard
// statistical batteries.
struct Xoroshiro128pp {
  std::uint64_t s0 = 0;
  std::uint64_t s1 = 0;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  // State expansion from a 64-bit seed; the all-zero state (the one fixed
  // point the generator cannot leave) is remapped.
  static constexpr Xoroshiro128pp from_seed(std::uint64_t seed) noexcept {
    Xoroshiro128pp g{mix64(seed), mix64(seed ^ 0x6a09e667f3bcc909ULL)};
    if (g.s0 == 0 && g.s1 == 0) g.s1 = 0x9e3779b97f4a7c15ULL;
    return g;
  }

  constexpr std::uint64_t next() noexcept {
    const std::uint64_t a = s0;
    std::uint64_t b = s1;
    const std::uint64_t r = rotl(a + b, 17) + a;
    b ^= a;
    s0 = rotl(a, 49) ^ b ^ (b << 21);
    s1 = rotl(b, 28);
    return r;
  }
};

// Generator for one individual's stream. Draw 0 is the selection tie-break
// key; how later draws map to bits is fixed by the draw protocol documented
// in sampling.hpp, shared by the scalar sampler and the batched kernels.
inline constexpr Xoroshiro128pp stream_generator(const RngStreamSpec& spec) noexcept {
  return Xoroshiro128pp::from_seed(stream_seed(spec));
}

// Acceptance threshold for one Bernoulli bit: a uniform 64-bit draw u maps to
// a 1 iff u < bit_threshold(p). Multiplying by 2^64 only shifts the exponent,
// so the product is exact and the cast truncates toward zero; the realized
// probability is floor(p * 2^64) / 2^64, within 2^-64 of p.
inline constexpr std::uint64_t bit_threshold(double p) noexcept {
  if (p >= 1.0) return ~0ULL;
  if (p <= 0.0) return 0;
  return static_cast<std::uint64_t>(p * 0x1p64);
}

}  // namespace umda
