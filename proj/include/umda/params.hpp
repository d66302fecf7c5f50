#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace umda {

struct UmdaParams {
  std::uint32_t n = 0;              // problem dimension, >= 2
  std::uint64_t mu = 0;             // parents kept per iteration, 1 <= mu <= lambda
  std::uint64_t lambda = 0;         // offspring per iteration
  std::uint64_t max_iterations = 0; // iteration cap, >= 1 (0 = use default 10 n)
  std::uint64_t master_seed = 0;

  // Fitness values and per-individual prefix lengths are carried as 16-bit
  // integers in the streaming engine; this bound keeps that exact.
  static constexpr std::uint32_t kMaxDimension = 65534;

  void validate() const {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (n > kMaxDimension)
      throw std::invalid_argument("n must be at most " + std::to_string(kMaxDimension));
    if (mu < 1) throw std::invalid_argument("mu must be at least 1");
    if (mu > lambda) throw std::invalid_argument("mu must not exceed lambda");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  }

  static std::uint64_t default_max_iterations(std::uint32_t n) { return 10ULL * n; }
};

}  // namespace umda
