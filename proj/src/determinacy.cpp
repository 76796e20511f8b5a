#include "lowdeg/determinacy.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "lowdeg/error.hpp"

namespace lowdeg {

UniquenessCertificate certify_unique(const BooleanFunction& f, int d) { return certify_unique(truncate(f, d), f); }

UniquenessCertificate certify_unique(const TruncationResult& t, const BooleanFunction& f) {
  require(t.p == f.dim() && t.residual_numerators.size() == f.size(), "certificate: truncation does not match function");
  UniquenessCertificate c;
  c.p = t.p;
  c.d = t.d;
  c.denominator = static_cast<std::int64_t>(f.size());
  c.sign_agrees = true;
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    const std::int64_t r = std::llabs(t.residual_numerators[m]);
    if (r > c.max_residual_num) {
      c.max_residual_num = r;
      c.argmax_point = m;
    }
    const std::int64_t q = t.trunc_numerators[m];
    if (q == 0 || (q > 0) != (f.value(m) > 0)) c.sign_agrees = false;
  }
  // Strict: |r_d| = 1 at a point leaves q_d(x) = 0 there, the degenerate tie.
  c.holds = c.max_residual_num < c.denominator;
  return c;
}

BinomialCounts binomial_cumulative(int p, int d) {
  require(p >= 1 && p <= kMaxBoundDim, "binomial_cumulative: p must be in [1, 63]");
  check_degree(p, d);
  unsigned __int128 binom = 1;
  std::uint64_t low = 0;
  for (int k = 0; k <= d; ++k) {
    low += static_cast<std::uint64_t>(binom);
    binom = binom * static_cast<unsigned>(p - k) / static_cast<unsigned>(k + 1);
  }
  const std::uint64_t total = std::uint64_t{1} << p;
  return {low, total - low};
}

double hoeffding_tail(int p, double t) {
  require(p >= 1, "hoeffding_tail: p must be positive");
  require(t > 0, "hoeffding_tail: t must be positive");
  return std::exp(-2.0 * t * t / p);
}

double rademacher_tail(double sq_norm, double eta) {
  require(sq_norm > 0, "rademacher_tail: squared norm must be positive");
  require(eta > 0, "rademacher_tail: eta must be positive");
  return 2.0 * std::exp(-eta * eta / (2.0 * sq_norm));
}

double lower_threshold(int p, double omega) {
  require(p >= 1, "thresholds: p must be a positive integer");
  require(omega >= 0 && std::isfinite(omega), "thresholds: omega must be finite and nonnegative");
  const double half = p / 2.0;
  return half - std::sqrt(half * (std::log(static_cast<double>(p)) + omega));
}

double upper_threshold(int p, double eta) {
  require(p >= 1, "thresholds: p must be a positive integer");
  require(eta > 0 && eta * eta < 6.0 * p, "thresholds: eta must satisfy 0 < eta^2 < 6p");
  const double half = p / 2.0;
  return half + std::sqrt(half * std::log(6.0 * p / (eta * eta)));
}

Thresholds thresholds(int p, double omega, double eta) {
  require(eta > 0 && eta < 1, "thresholds: eta must lie in (0, 1)");
  return {lower_threshold(p, omega), upper_threshold(p, eta)};
}

BoundsReport probability_bounds(int p, int d, double eta, double omega) {
  require(eta > 0 && eta <= 1, "probability_bounds: eta must lie in (0, 1]");
  const auto counts = binomial_cumulative(p, d);
  BoundsReport b;
  b.p = p;
  b.d = d;
  b.eta = eta;
  b.omega = omega;
  b.low_count = counts.low;
  b.high_count = counts.high;
  const double n = std::ldexp(1.0, p);
  const double log_n = p * std::numbers::ln2;
  b.residual_variance = static_cast<double>(counts.high) / n;
  // log(N + 1) = p log 2 + log1p(2^-p)
  b.log_nonuniqueness_bound =
      static_cast<double>(counts.low) * (log_n + std::log1p(std::ldexp(1.0, -p))) - n * std::numbers::ln2;
  b.log_uniqueness_failure_bound = counts.high == 0
                                       ? -std::numeric_limits<double>::infinity()
                                       : std::numbers::ln2 + log_n - eta * eta * n / (2.0 * static_cast<double>(counts.high));
  b.nonuniqueness_vacuous = b.log_nonuniqueness_bound >= 0;
  b.uniqueness_failure_vacuous = b.log_uniqueness_failure_bound >= 0;
  b.d_lower = lower_threshold(p, omega);
  b.d_upper = upper_threshold(p, eta);
  return b;
}

}  // namespace lowdeg
