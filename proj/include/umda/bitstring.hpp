#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace umda {

// Packed bit string. Position 0 (the semantically first bit) is the most
// significant bit of word 0, so a prefix of ones is a run of leading set bits
// and the prefix scan is a countl_one loop. Bits past n in the last word are
// kept zero (class invariant).
struct PackedBits {
  std::vector<std::uint64_t> words;
  std::uint32_t n = 0;

  PackedBits() = default;
  explicit PackedBits(std::uint32_t n_bits) : words((n_bits + 63) / 64, 0), n(n_bits) {}

  bool get(std::uint32_t i) const { return (words[i >> 6] >> (63 - (i & 63))) & 1ULL; }

  void set(std::uint32_t i, bool v) {
    const std::uint64_t mask = 1ULL << (63 - (i & 63));
    if (v)
      words[i >> 6] |= mask;
    else
      words[i >> 6] &= ~mask;
  }

  // Sets positions [0, k) to 1 in word-sized strokes.
  void set_prefix_ones(std::uint32_t k) {
    std::uint32_t full = k >> 6;
    for (std::uint32_t w = 0; w < full; ++w) words[w] = ~0ULL;
    if (k & 63) words[full] |= ~0ULL << (64 - (k & 63));
  }

  // Length of the all-ones prefix.
  std::uint32_t leading_one_run() const {
    std::uint32_t run = 0;
    for (std::uint64_t w : words) {
      const int c = std::countl_one(w);
      run += static_cast<std::uint32_t>(c);
      if (c < 64) break;
    }
    return run < n ? run : n;
  }

  std::uint32_t count_ones() const {
    std::uint32_t c = 0;
    for (std::uint64_t w : words) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
  }

  bool all_ones() const { return leading_one_run() == n; }

  bool operator==(const PackedBits& o) const { return n == o.n && words == o.words; }
};

}  // namespace umda
