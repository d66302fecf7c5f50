#include "umda/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace umda {

namespace {

void require_delta_open_unit(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie strictly inside (0, 1)");
  }
}

double ratio_of(std::uint64_t lambda, std::uint64_t mu) {
  if (mu == 0) throw std::invalid_argument("mu must be positive");
  if (lambda == 0) throw std::invalid_argument("lambda must be positive");
  return static_cast<double>(lambda) / static_cast<double>(mu);
}

}  // namespace

std::int64_t nudged_floor(double x) {
  return static_cast<std::int64_t>(std::floor(x + kRelativeNudge * std::fabs(x)));
}

std::int64_t nudged_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(x - kRelativeNudge * std::fabs(x)));
}

std::int64_t d_upper(double delta, std::uint64_t lambda, std::uint64_t mu) {
  require_delta_open_unit(delta);
  const double zeta = (1.0 - delta) / (4.0 * std::numbers::e);
  const double x = zeta * ratio_of(lambda, mu);
  return nudged_floor(std::log(x) / std::log(4.0));
}

std::int64_t d_lower(double delta, std::uint64_t lambda, std::uint64_t mu) {
  require_delta_open_unit(delta);
  const double zeta = 0.75 * (1.0 + delta);
  const double x = zeta * ratio_of(lambda, mu);
  return nudged_ceil(std::log(x) / std::log(4.0 / 3.0));
}

std::int64_t xi(std::uint32_t n, std::uint64_t lambda) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (lambda == 0) throw std::invalid_argument("lambda must be positive");
  const double arg = static_cast<double>(n) * static_cast<double>(n) *
                     static_cast<double>(lambda);
  return nudged_ceil(std::log(arg) / std::log(4.0 / 3.0)) + 1;
}

std::int64_t upper_bound_iterations(std::uint32_t n, std::int64_t d) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (d < 0) {
    throw std::invalid_argument(
        "upper bound iterations need non-negative per-iteration progress");
  }
  // ceil(n/(d+1)) is exact in integers; the second term is irrational.
  const std::int64_t sweep = (static_cast<std::int64_t>(n) + d) / (d + 1);
  const double tail = (static_cast<double>(n) / (n - 1.0)) * std::numbers::e *
                      std::log(static_cast<double>(n));
  return sweep + nudged_ceil(tail);
}

std::int64_t lower_bound_iterations(std::uint32_t n, std::int64_t xi_value,
                                    std::int64_t d) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const std::int64_t margin = static_cast<std::int64_t>(n) - xi_value;
  if (margin < 1 || d < 0) return 0;
  return margin / (d + 1);
}

double chernoff_lower_tail(double expectation, double delta) {
  if (expectation < 0.0) throw std::invalid_argument("expectation must be >= 0");
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must lie in [0, 1]");
  }
  return std::exp(-delta * delta * expectation / 2.0);
}

double chernoff_upper_tail(double expectation, double delta) {
  if (expectation < 0.0) throw std::invalid_argument("expectation must be >= 0");
  if (delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must lie in [0, 1]");
  }
  return std::exp(-delta * delta * expectation / 3.0);
}

double drift_band_exit_bound(double d, std::uint64_t mu, std::uint64_t t) {
  if (!(d > 0.0)) throw std::invalid_argument("band half-width must be positive");
  if (mu < 1) throw std::invalid_argument("mu must be at least 1");
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const double value = 2.0 * std::exp(-d * d * static_cast<double>(mu) /
                                      (2.0 * static_cast<double>(t)));
  return value < 1.0 ? value : 1.0;
}

double conjectured_bound(std::uint32_t n, std::uint64_t mu,
                         std::uint64_t lambda) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (mu == 0 || lambda == 0) {
    throw std::invalid_argument("mu and lambda must be positive");
  }
  const double nd = static_cast<double>(n);
  const double mud = static_cast<double>(mu);
  const double lamd = static_cast<double>(lambda);
  const double damped = nd / std::exp(mud / nd);  // -> 0 once mu >> n
  const double inner = nd / lamd + std::log(std::min(mud, nd));
  return lamd * (nd + damped * inner);
}

BoundReport make_bound_report(std::uint32_t n, std::uint64_t mu,
                              std::uint64_t lambda, double delta) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  require_delta_open_unit(delta);
  if (mu == 0 || lambda == 0) {
    throw std::invalid_argument("mu and lambda must be positive");
  }

  BoundReport r;
  r.n = n;
  r.mu = mu;
  r.lambda = lambda;
  r.delta = delta;
  r.zeta_upper = (1.0 - delta) / (4.0 * std::numbers::e);
  r.zeta_lower = 0.75 * (1.0 + delta);
  r.d_upper = d_upper(delta, lambda, mu);
  r.d_lower = d_lower(delta, lambda, mu);
  r.xi = xi(n, lambda);

  r.upper_bound_defined = r.d_upper >= 0;
  if (r.upper_bound_defined) {
    r.upper_bound_iterations = upper_bound_iterations(n, r.d_upper);
    r.upper_bound_evaluations =
        lambda * static_cast<std::uint64_t>(r.upper_bound_iterations);
  }

  r.lower_bound_iterations = lower_bound_iterations(n, r.xi, r.d_lower);
  r.lower_bound_trivial = r.lower_bound_iterations == 0;
  r.lower_bound_evaluations =
      lambda * static_cast<std::uint64_t>(r.lower_bound_iterations);

  const double log_n = std::log(static_cast<double>(n));
  r.mu_threshold_upper = 128.0 * n * log_n;
  r.mu_threshold_lower = 64.0 * n * log_n;
  const double mud = static_cast<double>(mu);
  const double lamd = static_cast<double>(lambda);
  const double tol = 1.0 - kRelativeNudge;
  r.regime_upper_ok = mud >= r.mu_threshold_upper * tol &&
                      lamd >= (mud / r.zeta_upper) * tol;
  r.regime_lower_ok = lambda >= mu && mud >= r.mu_threshold_lower * tol &&
                      lamd >= (mud / r.zeta_lower) * tol;
  r.regime_upper_ceil_variant_ok =
      mud >= 128.0 * n * static_cast<double>(nudged_ceil(log_n)) * tol &&
      lamd >= (mud / r.zeta_upper) * tol;

  r.mu_progress_lemma_threshold = 4.0 * ((1.0 - delta) / (delta * delta)) * log_n;
  r.mu_band_lemma_threshold = 6.0 * ((1.0 + delta) / (delta * delta)) * log_n;

  r.failure_prob_upper = 5.0 / static_cast<double>(n);
  r.failure_prob_lower = 4.0 / static_cast<double>(n);

  r.conjectured_evaluations = conjectured_bound(n, mu, lambda);
  return r;
}

}  // namespace umda
