#pragma once

#include <cstdint>
#include <string>

#include "lowdeg/boolean_function.hpp"
#include "lowdeg/transform.hpp"

namespace lowdeg {

// Outcome of the sup-norm residual test. When `holds`, q_d has the sign of f
// at every point, and no bounded g != f shares the degree-<=d coefficients.
struct UniquenessCertificate {
  int p = 0;
  int d = 0;
  bool holds = false;
  std::int64_t max_residual_num = 0;  // max_m |N r_d(x_m)|
  std::uint64_t argmax_point = 0;     // smallest mask attaining the max
  std::int64_t denominator = 0;       // N
  bool sign_agrees = false;

  double eta_hat() const { return static_cast<double>(max_residual_num) / static_cast<double>(denominator); }
};

UniquenessCertificate certify_unique(const BooleanFunction& f, int d);
UniquenessCertificate certify_unique(const TruncationResult& t, const BooleanFunction& f);

struct BinomialCounts {
  std::uint64_t low = 0;   // K_d
  std::uint64_t high = 0;  // M_d
};

inline constexpr int kMaxBoundDim = 63;

BinomialCounts binomial_cumulative(int p, int d);

// exp(-2 t^2 / p), an upper bound on P(Bin(p,1/2) <= p/2 - t).
double hoeffding_tail(int p, double t);

// 2 exp(-eta^2 / (2 |a|^2)), an upper bound on P(|sum a_i eps_i| > eta).
double rademacher_tail(double sq_norm, double eta);

struct Thresholds {
  double lower = 0.0;
  double upper = 0.0;
};

// Degree thresholds of the two regimes:
//   lower = p/2 - sqrt(p/2 (log p + omega)),  upper = p/2 + sqrt(p/2 log(6p / eta^2)).
// Requires 0 < eta < 1.
Thresholds thresholds(int p, double omega, double eta);

double lower_threshold(int p, double omega);
// Same closed form as thresholds().upper but accepts any eta > 0 with 6p > eta^2,
// so reports can evaluate it at the certificate's own eta = 1.
double upper_threshold(int p, double eta);

struct BoundsReport {
  int p = 0;
  int d = 0;
  double eta = 1.0;
  double omega = 1.0;
  std::uint64_t low_count = 0;   // K_d
  std::uint64_t high_count = 0;  // M_d
  double residual_variance = 0;  // M_d / N
  double log_nonuniqueness_bound = 0;        // log of (N+1)^{K_d} / 2^N
  double log_uniqueness_failure_bound = 0;   // log of 2N exp(-eta^2 N / (2 M_d)), -inf if M_d = 0
  bool nonuniqueness_vacuous = false;
  bool uniqueness_failure_vacuous = false;
  double d_lower = 0;
  double d_upper = 0;
};

BoundsReport probability_bounds(int p, int d, double eta, double omega = 1.0);

}  // namespace lowdeg
