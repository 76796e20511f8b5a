#include <doctest.h>

#include <cmath>

#include "lowdeg/determinacy.hpp"
#include "lowdeg/error.hpp"
#include "lowdeg/random.hpp"
#include "lowdeg/transform.hpp"
#include "oracles.hpp"

using namespace lowdeg;

TEST_CASE("certificate examples") {
  auto c = certify_unique(BooleanFunction(4), 0);
  CHECK(c.holds);
  CHECK(c.max_residual_num == 0);
  CHECK(c.sign_agrees);
  for (int p = 1; p <= 8; ++p) {
    auto par = BooleanFunction::character(p, (std::uint64_t{1} << p) - 1);
    auto fail = certify_unique(par, p - 1);
    CHECK_FALSE(fail.holds);
    CHECK(fail.max_residual_num == static_cast<std::int64_t>(par.size()));
    CHECK(fail.denominator == static_cast<std::int64_t>(par.size()));
    CHECK(fail.eta_hat() == 1.0);
    CHECK(fail.argmax_point == 0);
    CHECK_FALSE(fail.sign_agrees);
  }
  CHECK_THROWS_AS(certify_unique(BooleanFunction(3), 4), Error);
}

TEST_CASE("certificate invariants on random functions") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const int p = 1 + static_cast<int>(i % 10);
    auto f = sample_function(p, substream_key(31, i));
    const auto n = static_cast<std::int64_t>(f.size());
    for (int d = 0; d <= p; ++d) {
      auto t = truncate(f, d);
      auto c = certify_unique(t, f);
      std::int64_t mx = 0;
      std::uint64_t arg = 0;
      bool agree = true;
      for (std::uint64_t m = 0; m < f.size(); ++m) {
        const auto r = std::abs(t.residual_numerators[m]);
        if (r > mx) mx = r, arg = m;
        const auto q = t.trunc_numerators[m];
        if (q == 0 || (q > 0) != (f.value(m) > 0)) agree = false;
      }
      CHECK(c.max_residual_num == mx);
      CHECK(c.argmax_point == arg);
      CHECK(c.holds == (mx < n));
      CHECK(c.sign_agrees == agree);
      if (c.holds) CHECK(c.sign_agrees);
    }
  }
}

TEST_CASE("binomial counts") {
  auto a = binomial_cumulative(4, 1);
  CHECK(a.low == 5);
  CHECK(a.high == 11);
  auto b = binomial_cumulative(16, 8);
  CHECK(b.low == oracle::lower_count(16, 8));
  CHECK(b.low == 39203);
  CHECK(b.high == 26333);
  auto c = binomial_cumulative(10, 10);
  CHECK(c.low == 1024);
  CHECK(c.high == 0);
  for (int p = 1; p <= 40; ++p) {
    std::uint64_t prev_low = 0, prev_high = ~std::uint64_t{0};
    for (int d = 0; d <= p; ++d) {
      auto k = binomial_cumulative(p, d);
      CHECK(k.low == oracle::lower_count(p, d));
      CHECK(k.low + k.high == (std::uint64_t{1} << p));
      CHECK(k.low >= prev_low);
      CHECK(k.high <= prev_high);
      prev_low = k.low;
      prev_high = k.high;
    }
  }
  auto top = binomial_cumulative(63, 31);
  CHECK(top.low == (std::uint64_t{1} << 62));
  CHECK_THROWS_AS(binomial_cumulative(64, 0), Error);
  CHECK_THROWS_AS(binomial_cumulative(5, 6), Error);
}

TEST_CASE("hoeffding tail") {
  CHECK(hoeffding_tail(100, 5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(hoeffding_tail(100, 5) == doctest::Approx(0.6065).epsilon(1e-4));
  for (int p = 2; p <= 30; ++p) {
    const double t = std::sqrt(p / 2.0 * std::log(p));
    CHECK(hoeffding_tail(p, t) == doctest::Approx(1.0 / p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(hoeffding_tail(10, 0), Error);
  CHECK_THROWS_AS(hoeffding_tail(10, -1), Error);
}

TEST_CASE("hoeffding dominates the exact binomial tail for p <= 30") {
  for (int p = 1; p <= 30; ++p) {
    for (int t = 1; t <= p; ++t) {
      const double cut = p / 2.0 - t;
      const double exact =
          cut < 0 ? 0.0 : static_cast<double>(oracle::lower_count(p, static_cast<int>(std::floor(cut)))) / std::ldexp(1.0, p);
      CHECK(hoeffding_tail(p, t) >= exact);
    }
  }
}

TEST_CASE("rademacher tail") {
  CHECK(rademacher_tail(1.0, 1e3) == 0.0);
  const double n = 65536, m = 697;
  CHECK(rademacher_tail(m / n, 1.0) == doctest::Approx(2 * std::exp(-n / (2 * m))).epsilon(1e-12));
  CHECK_THROWS_AS(rademacher_tail(0, 1), Error);
  CHECK_THROWS_AS(rademacher_tail(1, 0), Error);
}

TEST_CASE("rademacher tail dominates exhaustive enumeration with 10 equal weights") {
  for (double scale : {1.0, 1.0 / std::sqrt(10.0)}) {
    const double sq = 10 * scale * scale;
    for (double eta : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
      int hits = 0;
      for (int s = 0; s < 1024; ++s) {
        const int sum = 2 * std::popcount(static_cast<unsigned>(s)) - 10;
        if (std::abs(sum * scale) > eta) ++hits;
      }
      CHECK(rademacher_tail(sq, eta) >= hits / 1024.0);
    }
  }
}

TEST_CASE("thresholds") {
  auto t = thresholds(100, 1.0, 0.5);
  CHECK(std::abs(t.upper - 69.72) < 1e-2);
  CHECK(t.upper == doctest::Approx(50 + std::sqrt(50 * std::log(2400.0))).epsilon(1e-14));
  CHECK(t.lower == doctest::Approx(50 - std::sqrt(50 * (std::log(100.0) + 1))).epsilon(1e-14));
  CHECK(std::abs(thresholds(16, 1.0, 0.9).upper - 14.18) < 1e-2);
  for (int p = 1; p <= 60; ++p) {
    auto r = thresholds(p, 0.0, 0.3);
    CHECK(r.lower <= p / 2.0);
    CHECK(r.upper >= p / 2.0);
  }
  CHECK_THROWS_AS(thresholds(10, 1.0, 1.0), Error);
  CHECK_THROWS_AS(thresholds(10, 1.0, 0.0), Error);
  CHECK_THROWS_AS(thresholds(0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(thresholds(10, -0.5, 0.5), Error);
}

TEST_CASE("probability bounds examples") {
  auto b = probability_bounds(16, 12, 1.0);
  CHECK(b.high_count == 697);
  CHECK(b.log_uniqueness_failure_bound == doctest::Approx(std::log(2.0 * 65536) - 65536.0 / 1394).epsilon(1e-12));
  CHECK(std::abs(b.log_uniqueness_failure_bound + 35.2) < 0.05);
  CHECK_FALSE(b.uniqueness_failure_vacuous);
  CHECK(b.residual_variance == doctest::Approx(697.0 / 65536));

  auto full = probability_bounds(9, 9, 1.0);
  CHECK(std::isinf(full.log_uniqueness_failure_bound));
  CHECK(full.log_uniqueness_failure_bound < 0);

  auto small = probability_bounds(4, 0, 1.0);
  CHECK(small.log_nonuniqueness_bound == doctest::Approx(std::log(17.0) - 16 * std::log(2.0)).epsilon(1e-12));
  CHECK(small.log_nonuniqueness_bound < 0);
  CHECK_FALSE(small.nonuniqueness_vacuous);
  CHECK_THROWS_AS(probability_bounds(4, 5, 1.0), Error);
  CHECK_THROWS_AS(probability_bounds(4, 2, 0.0), Error);
}

TEST_CASE("probability bounds stay finite in log space for p <= 24") {
  for (int p = 1; p <= 24; ++p) {
    for (int d = 0; d <= p; ++d) {
      auto b = probability_bounds(p, d, 1.0);
      CHECK(std::isfinite(b.log_nonuniqueness_bound));
      if (d < p) CHECK(std::isfinite(b.log_uniqueness_failure_bound));
      CHECK(b.nonuniqueness_vacuous == (b.log_nonuniqueness_bound >= 0));
      CHECK(b.uniqueness_failure_vacuous == (b.log_uniqueness_failure_bound >= 0));
      CHECK(b.low_count + b.high_count == (std::uint64_t{1} << p));
    }
  }
}

TEST_CASE("mean residual energy equals M_d") {
  const int p = 12, d = 6, samples = 10000;
  const double n = 4096;
  double sum = 0, sum_sq = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto t = truncate(sample_function(p, substream_key(606, i)), d);
    double e = 0;
    for (auto r : t.residual_numerators) e += (r / n) * (r / n);
    sum += e;
    sum_sq += e * e;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  const double expected = static_cast<double>(binomial_cumulative(p, d).high);
  CHECK(std::abs(mean - expected) <= 5 * se);
}

TEST_CASE("empirical residual exceedance respects the failure bound") {
  const int p = 12, samples = 2000;
  const double n = 4096;
  for (int d = 6; d <= 12; ++d) {
    std::vector<std::int64_t> maxima;
    for (std::uint64_t i = 0; i < samples; ++i) {
      auto c = certify_unique(sample_function(p, substream_key(d, i)), d);
      maxima.push_back(c.max_residual_num);
    }
    for (double eta : {0.5, 0.75, 0.9, 1.0}) {
      auto b = probability_bounds(p, d, eta);
      if (b.uniqueness_failure_vacuous) continue;
      int exceed = 0;
      for (auto m : maxima)
        if (m > eta * n) ++exceed;
      const double rate = static_cast<double>(exceed) / samples;
      CHECK(rate <= std::exp(b.log_uniqueness_failure_bound) + 3 * std::sqrt(rate * (1 - rate) / samples));
    }
  }
}
