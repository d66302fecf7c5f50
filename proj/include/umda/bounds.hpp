#pragma once

#include <cstdint>

namespace umda {

// Floor/ceiling with a relative nudge of 1e-9 toward the rounding direction,
// so values a few ulps away from an exact integer (log of an exact power,
// ratios that are exact integers) round as the ideal real number would. The
// nudge is far above f.p. noise and far below the spacing of genuinely
// distinct inputs used anywhere in the formulas.
inline constexpr double kRelativeNudge = 1e-9;
std::int64_t nudged_floor(double x);
std::int64_t nudged_ceil(double x);

// floor(log4(zeta * lambda/mu)) with zeta = (1 - delta)/(4e): the number of
// extra frequencies the selection pressure fixes per iteration in the upper
// bound analysis. Negative when lambda is too small relative to mu.
std::int64_t d_upper(double delta, std::uint64_t lambda, std::uint64_t mu);

// ceil(log_{4/3}(zeta * lambda/mu)) with zeta = (3/4)(1 + delta): the
// per-iteration progress cap used by the lower bound. Non-negative whenever
// lambda >= mu.
std::int64_t d_lower(double delta, std::uint64_t lambda, std::uint64_t mu);

// ceil(log_{4/3}(n^2 lambda)) + 1: head-start margin of the lower bound.
std::int64_t xi(std::uint32_t n, std::uint64_t lambda);

// ceil(n/(d+1)) + ceil((n/(n-1)) e ln n) iterations; requires d >= 0.
std::int64_t upper_bound_iterations(std::uint32_t n, std::int64_t d);

// floor((n - xi)/(d + 1)) iterations; 0 when n - xi < 1 (the bound is then
// vacuous) or d < 0.
std::int64_t lower_bound_iterations(std::uint32_t n, std::int64_t xi_value,
                                    std::int64_t d);

// exp(-delta^2 E / 2) and exp(-delta^2 E / 3): tail bounds for a sum of
// independent [0,1]-valued variables with expectation E.
double chernoff_lower_tail(double expectation, double delta);
double chernoff_upper_tail(double expectation, double delta);

// min(1, 2 exp(-d^2 mu / (2 t))): probability that an unbiased frequency
// walks out of (start - d, start + d) within t iterations.
double drift_band_exit_bound(double d, std::uint64_t mu, std::uint64_t t);

// lambda * (n + (n / e^(mu/n)) * (n/lambda + ln min(mu, n))): the conjectured
// general evaluation count. Order of magnitude only; hidden constants unknown.
double conjectured_bound(std::uint32_t n, std::uint64_t mu, std::uint64_t lambda);

// Every formula above evaluated for one parameter tuple, plus advisory
// regime flags. Formulas always evaluate; the flags say whether the stated
// preconditions of the corresponding theorems hold.
struct BoundReport {
  std::uint32_t n = 0;
  std::uint64_t mu = 0;
  std::uint64_t lambda = 0;
  double delta = 0.5;

  double zeta_upper = 0.0;  // (1 - delta)/(4e)
  double zeta_lower = 0.0;  // (3/4)(1 + delta)
  std::int64_t d_upper = 0;
  std::int64_t d_lower = 0;
  std::int64_t xi = 0;

  // Upper bound: defined only when d_upper >= 0 (otherwise the iteration
  // formula divides by a non-positive progress rate).
  bool upper_bound_defined = false;
  std::int64_t upper_bound_iterations = 0;
  std::uint64_t upper_bound_evaluations = 0;

  // Lower bound: trivial when n - xi < 1 (bound 0 holds vacuously).
  bool lower_bound_trivial = false;
  std::int64_t lower_bound_iterations = 0;
  std::uint64_t lower_bound_evaluations = 0;

  // Theorem-level regimes.
  bool regime_upper_ok = false;  // mu >= 128 n ln n  and  lambda >= mu/zeta_upper
  bool regime_lower_ok = false;  // lambda >= mu >= 64 n ln n  and  lambda >= mu/zeta_lower
  double mu_threshold_upper = 0.0;  // 128 n ln n
  double mu_threshold_lower = 0.0;  // 64 n ln n
  // The source analysis also uses mu >= 128 n ceil(ln n) in one step; advisory.
  bool regime_upper_ceil_variant_ok = false;

  // Lemma-level advisory thresholds (much weaker than the theorem levels):
  // per-iteration progress needs mu >= 4((1-delta)/delta^2) ln n; the
  // selection band needs mu >= 6((1+delta)/delta^2) ln n.
  double mu_progress_lemma_threshold = 0.0;
  double mu_band_lemma_threshold = 0.0;

  double failure_prob_upper = 0.0;  // 5/n
  double failure_prob_lower = 0.0;  // 4/n

  double conjectured_evaluations = 0.0;  // order-of-magnitude only
};

BoundReport make_bound_report(std::uint32_t n, std::uint64_t mu,
                              std::uint64_t lambda, double delta = 0.5);

}  // namespace umda
