#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "umda/bitstring.hpp"

namespace umda {

enum class FitnessTag : std::uint8_t {
  leading_ones,
  one_max,
  neutral_suffix_leading_ones,
};

// Selectable benchmark function. neutral_suffix_leading_ones(k) scores the
// leading-one run of the first n-k bits only, which makes the last k
// positions neutral: their value never changes the fitness of any string.
struct FitnessKind {
  FitnessTag tag = FitnessTag::leading_ones;
  std::uint32_t neutral_suffix = 0;  // k, only for tag == neutral_suffix_leading_ones

  static FitnessKind leading_ones() { return {FitnessTag::leading_ones, 0}; }
  static FitnessKind one_max() { return {FitnessTag::one_max, 0}; }
  static FitnessKind neutral_suffix_leading_ones(std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("neutral suffix length must be at least 1");
    return {FitnessTag::neutral_suffix_leading_ones, k};
  }

  void validate(std::uint32_t n) const {
    if (tag == FitnessTag::neutral_suffix_leading_ones && (neutral_suffix < 1 || neutral_suffix >= n))
      throw std::invalid_argument("neutral suffix length must satisfy 1 <= k < n");
  }

  // Largest achievable value; reached exactly by the optima of the function.
  std::uint32_t optimum_value(std::uint32_t n) const {
    switch (tag) {
      case FitnessTag::leading_ones: return n;
      case FitnessTag::one_max: return n;
      case FitnessTag::neutral_suffix_leading_ones: return n - neutral_suffix;
    }
    return n;
  }

  // Number of leading positions that determine the score for the prefix-run
  // family; n itself for one_max (no prefix structure).
  std::uint32_t scored_prefix(std::uint32_t n) const {
    return tag == FitnessTag::neutral_suffix_leading_ones ? n - neutral_suffix : n;
  }

  std::string name() const {
    switch (tag) {
      case FitnessTag::leading_ones: return "leading_ones";
      case FitnessTag::one_max: return "one_max";
      case FitnessTag::neutral_suffix_leading_ones:
        return "neutral_suffix:" + std::to_string(neutral_suffix);
    }
    return "?";
  }

  // Parses the CLI spelling: leading_ones | one_max | neutral_suffix:<k>.
  static FitnessKind parse(const std::string& text);
};

// Length of the all-ones prefix (0 if the first bit is 0; n iff all ones).
inline std::uint32_t leading_ones(const PackedBits& x) {
  if (x.n < 2) throw std::invalid_argument("leading_ones: need at least 2 bits");
  return x.leading_one_run();
}

inline std::uint32_t one_max(const PackedBits& x) { return x.count_ones(); }

// Leading-one run of the first n-k bits; the trailing k bits are neutral.
std::uint32_t neutral_suffix_leading_ones(const PackedBits& x, std::uint32_t k);

std::uint32_t evaluate_fitness(const FitnessKind& kind, const PackedBits& x);

// Exhaustive test oracle: does flipping position i (1-based) from 0 to 1 never
// decrease f, over every context of the other n-1 bits? Exponential in n and
// therefore capped at n <= 16.
bool weakly_prefers_one_bruteforce(const FitnessKind& kind, std::uint32_t n, std::uint32_t i);

}  // namespace umda
