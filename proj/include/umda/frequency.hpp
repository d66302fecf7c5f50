#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace umda {

// Restrict a probability to the margin interval [1/n, 1 - 1/n].
inline double clamp_frequency(double value, std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("clamp_frequency: n must be at least 2");
  const double lo = 1.0 / static_cast<double>(n);
  const double hi = 1.0 - lo;
  return std::min(hi, std::max(lo, value));
}

// The model vector: one 1-probability per position, always clamped.
struct FrequencyVector {
  std::vector<double> values;

  FrequencyVector() = default;
  explicit FrequencyVector(std::vector<double> v) : values(std::move(v)) {}

  static FrequencyVector uniform_half(std::uint32_t n) {
    return FrequencyVector(std::vector<double>(n, 0.5));
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(values.size()); }
  double operator[](std::uint32_t i) const { return values[i]; }

  double min_value() const { return *std::min_element(values.begin(), values.end()); }
};

// Equality tolerance for frequency comparisons against the clamp borders and
// against exact k/mu grid values. 1 - 1/n is not exactly representable for
// general n, so all border tests share this single absolute tolerance.
inline constexpr double kFrequencyTolerance = 1e-12;

inline bool at_upper_border(double value, std::uint32_t n) {
  return value >= 1.0 - 1.0 / static_cast<double>(n) - kFrequencyTolerance;
}

inline bool at_lower_border(double value, std::uint32_t n) {
  return value <= 1.0 / static_cast<double>(n) + kFrequencyTolerance;
}

}  // namespace umda
