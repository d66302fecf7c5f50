#include "umda/fitness.hpp"

#include <stdexcept>

namespace umda {

FitnessKind FitnessKind::parse(const std::string& text) {
  if (text == "leading_ones") return leading_ones();
  if (text == "one_max") return one_max();
  const std::string prefix = "neutral_suffix:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string arg = text.substr(prefix.size());
    if (arg.empty()) throw std::invalid_argument("neutral_suffix needs a length, e.g. neutral_suffix:1");
    std::size_t pos = 0;
    const unsigned long k = std::stoul(arg, &pos);
    if (pos != arg.size()) throw std::invalid_argument("bad neutral_suffix length: " + arg);
    return neutral_suffix_leading_ones(static_cast<std::uint32_t>(k));
  }
  throw std::invalid_argument("unknown fitness '" + text +
                              "' (expected leading_ones, one_max, or neutral_suffix:<k>)");
}

std::uint32_t neutral_suffix_leading_ones(const PackedBits& x, std::uint32_t k) {
  if (k < 1 || k >= x.n)
    throw std::invalid_argument("neutral suffix length must satisfy 1 <= k < n");
  const std::uint32_t run = x.leading_one_run();
  const std::uint32_t scored = x.n - k;
  return run < scored ? run : scored;
}

std::uint32_t evaluate_fitness(const FitnessKind& kind, const PackedBits& x) {
  switch (kind.tag) {
    case FitnessTag::leading_ones: return leading_ones(x);
    case FitnessTag::one_max: return one_max(x);
    case FitnessTag::neutral_suffix_leading_ones:
      return neutral_suffix_leading_ones(x, kind.neutral_suffix);
  }
  throw std::logic_error("unhandled fitness tag");
}

bool weakly_prefers_one_bruteforce(const FitnessKind& kind, std::uint32_t n, std::uint32_t i) {
  if (n < 2 || n > 16) throw std::invalid_argument("bruteforce oracle is limited to 2 <= n <= 16");
  if (i < 1 || i > n) throw std::invalid_argument("position must lie in [1, n]");
  kind.validate(n);
  // Enumerate every context of the other n-1 bits; compare f with bit i set
  // against f with bit i clear.
  PackedBits with_one(n), with_zero(n);
  const std::uint64_t contexts = 1ULL << (n - 1);
  for (std::uint64_t ctx = 0; ctx < contexts; ++ctx) {
    std::uint64_t c = ctx;
    for (std::uint32_t pos = 0; pos < n; ++pos) {
      if (pos + 1 == i) {
        with_one.set(pos, true);
        with_zero.set(pos, false);
      } else {
        const bool b = c & 1ULL;
        c >>= 1;
        with_one.set(pos, b);
        with_zero.set(pos, b);
      }
    }
    if (evaluate_fitness(kind, with_one) < evaluate_fitness(kind, with_zero)) return false;
  }
  return true;
}

}  // namespace umda
