#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "lowdeg/lowdeg.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  ldg_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("errors carry a status and a message") {
  ldg_function* f = nullptr;
  CHECK(ldg_function_parse_wbf("WBF1\n2\n+-\n", 10, &f) == LDG_ERR_PARSE);
  CHECK(f == nullptr);
  CHECK(std::strlen(ldg_last_error()) > 0);
  CHECK(std::strchr(ldg_last_error(), '\n') == nullptr);
  CHECK(ldg_function_parse_wbf(nullptr, 0, &f) == LDG_ERR_INVALID_ARGUMENT);
  CHECK(ldg_function_load("/nonexistent/file.wbf", &f) == LDG_ERR_IO);
  CHECK(ldg_function_sample(25, 1, 0, &f) == LDG_ERR_INVALID_ARGUMENT);
  ldg_format fmt;
  CHECK(ldg_parse_format("yaml", &fmt) == LDG_ERR_INVALID_ARGUMENT);
  CHECK(ldg_parse_format("json", &fmt) == LDG_OK);
  CHECK(fmt == LDG_FORMAT_JSON);
  CHECK(std::string(ldg_version()) == "1.0.0");
}

TEST_CASE("function handles") {
  const int8_t signs[] = {1, -1, -1, 1};
  ldg_function* f = nullptr;
  REQUIRE(ldg_function_from_signs(2, signs, 4, &f) == LDG_OK);
  CHECK(ldg_function_dim(f) == 2);
  CHECK(ldg_function_value(f, 1) == -1);
  char* text = nullptr;
  REQUIRE(ldg_function_format_wbf(f, &text) == LDG_OK);
  CHECK(take(text) == "WBF1\n2\n+--+\n");
  int64_t s[4];
  REQUIRE(ldg_spectrum(f, s, 4) == LDG_OK);
  CHECK(s[3] == 4);
  CHECK(ldg_spectrum(f, s, 3) == LDG_ERR_INVALID_ARGUMENT);
  const int8_t bad[] = {1, 0, 1, 1};
  ldg_function* g = nullptr;
  CHECK(ldg_function_from_signs(2, bad, 4, &g) == LDG_ERR_INVALID_ARGUMENT);
  ldg_function_free(f);
  ldg_function_free(nullptr);
}

TEST_CASE("golden sample through the C API") {
  ldg_function* f = nullptr;
  REQUIRE(ldg_function_sample(3, 1, 0, &f) == LDG_OK);
  char* text = nullptr;
  REQUIRE(ldg_function_format_wbf(f, &text) == LDG_OK);
  CHECK(take(text) == "WBF1\n3\n+----+-+\n");
  ldg_function_free(f);
}

TEST_CASE("transform and truncation") {
  std::vector<int64_t> v{3, -1, 4, 1, -5, 9, 2, -6};
  auto w = v;
  REQUIRE(ldg_wht(w.data(), w.size()) == LDG_OK);
  REQUIRE(ldg_wht(w.data(), w.size()) == LDG_OK);
  for (size_t i = 0; i < v.size(); ++i) CHECK(w[i] == 8 * v[i]);
  CHECK(ldg_wht(w.data(), 6) == LDG_ERR_INVALID_ARGUMENT);

  ldg_function* par = nullptr;
  REQUIRE(ldg_function_character(3, 7, &par) == LDG_OK);
  int64_t t[8], r[8];
  REQUIRE(ldg_truncate(par, 2, t, r, 8) == LDG_OK);
  for (int m = 0; m < 8; ++m) {
    CHECK(t[m] == 0);
    CHECK(std::abs(r[m]) == 8);
  }
  CHECK(ldg_truncate(par, 4, t, nullptr, 8) == LDG_ERR_INVALID_ARGUMENT);
  ldg_certificate c;
  REQUIRE(ldg_certify_unique(par, 2, &c) == LDG_OK);
  CHECK_FALSE(c.holds);
  CHECK(c.max_residual_num == 8);
  CHECK(c.denominator == 8);
  CHECK(c.eta_hat == 1.0);
  char* report = nullptr;
  REQUIRE(ldg_certificate_report(par, 2, LDG_FORMAT_TEXT, &report) == LDG_OK);
  CHECK(take(report).rfind("NOT UNIQUE-CERTIFIED, max residual 8/8", 0) == 0);
  ldg_function_free(par);
}

TEST_CASE("bounds") {
  uint64_t k = 0, m = 0;
  REQUIRE(ldg_binomial_cumulative(16, 8, &k, &m) == LDG_OK);
  CHECK(k == 39203);
  CHECK(m == 26333);
  double h = 0;
  REQUIRE(ldg_hoeffding_tail(100, 5, &h) == LDG_OK);
  CHECK(h == doctest::Approx(std::exp(-0.5)));
  CHECK(ldg_hoeffding_tail(100, 0, &h) == LDG_ERR_INVALID_ARGUMENT);
  double lo = 0, hi = 0;
  REQUIRE(ldg_thresholds(100, 1.0, 0.5, &lo, &hi) == LDG_OK);
  CHECK(std::abs(hi - 69.72) < 1e-2);
  CHECK(ldg_thresholds(100, 1.0, 1.5, &lo, &hi) == LDG_ERR_INVALID_ARGUMENT);
  ldg_bounds b;
  REQUIRE(ldg_probability_bounds(16, 12, 1.0, 1.0, &b) == LDG_OK);
  CHECK(b.high_count == 697);
  CHECK(std::abs(b.log_uniqueness_failure_bound + 35.2) < 0.05);
  CHECK(b.uniqueness_failure_vacuous == 0);
  char* text = nullptr;
  REQUIRE(ldg_bounds_report(16, 12, 1.0, 1.0, LDG_FORMAT_JSON, &text) == LDG_OK);
  CHECK(take(text).find("\"M_d\"") != std::string::npos);
}

TEST_CASE("collisions") {
  ldg_function* par = nullptr;
  REQUIRE(ldg_function_character(3, 7, &par) == LDG_OK);
  ldg_collision* c = nullptr;
  REQUIRE(ldg_collide_exact(par, 0, &c) == LDG_OK);
  CHECK(ldg_collision_found(c) == 1);
  CHECK(ldg_collision_exhaustive(c) == 1);
  REQUIRE(ldg_collision_size(c) == 2);
  uint64_t masks[2] = {ldg_collision_mask(c, 0), ldg_collision_mask(c, 1)};
  int ok = 0;
  REQUIRE(ldg_verify_witness(par, 0, masks, 2, &ok) == LDG_OK);
  CHECK(ok == 1);
  ldg_collision_free(c);

  ldg_anneal_params params;
  ldg_anneal_params_default(&params);
  CHECK(params.restarts == 20);
  CHECK(params.cooling == 0.995);
  params.seed = 4;
  REQUIRE(ldg_collide_anneal(par, 0, &params, 2, &c) == LDG_OK);
  CHECK(ldg_collision_exhaustive(c) == -1);
  ldg_collision_free(c);

  ldg_function* big = nullptr;
  REQUIRE(ldg_function_sample(5, 1, 0, &big) == LDG_OK);
  CHECK(ldg_collide_exact(big, 1, &c) == LDG_ERR_LIMIT);
  ldg_function_free(big);
  ldg_function_free(par);

  ldg_census* census = nullptr;
  REQUIRE(ldg_collide_census(8, 0, 2000, 1, 2, &census) == LDG_OK);
  CHECK(ldg_census_distinct_keys(census) < 2000);
  REQUIRE(ldg_census_pair_count(census) > 0);
  uint64_t a = 0, b2 = 0;
  REQUIRE(ldg_census_pair(census, 0, &a, &b2) == LDG_OK);
  CHECK(a < b2);
  CHECK(ldg_census_pair(census, ldg_census_pair_count(census), &a, &b2) == LDG_ERR_INVALID_ARGUMENT);
  ldg_census_free(census);
}

TEST_CASE("competitor and sign certificate") {
  ldg_function* par = nullptr;
  REQUIRE(ldg_function_character(3, 7, &par) == LDG_OK);
  ldg_competitor* c = nullptr;
  REQUIRE(ldg_max_competitor(par, 1, &c) == LDG_OK);
  CHECK(ldg_competitor_is_zero(c) == 0);
  char* q = nullptr;
  REQUIRE(ldg_competitor_optimum(c, &q) == LDG_OK);
  CHECK(take(q) == "16/1");
  REQUIRE(ldg_competitor_value(c, 0, &q) == LDG_OK);
  CHECK(take(q) == "-2/1");
  ldg_competitor_free(c);
  REQUIRE(ldg_max_competitor(par, 3, &c) == LDG_OK);
  CHECK(ldg_competitor_is_zero(c) == 1);
  CHECK(ldg_competitor_value(c, 0, &q) != LDG_OK);
  ldg_competitor_free(c);
  ldg_sign_cert* s = nullptr;
  REQUIRE(ldg_sign_certificate(par, 1, &s) == LDG_OK);
  CHECK(ldg_sign_cert_feasible(s) == 0);
  ldg_sign_cert_free(s);
  REQUIRE(ldg_sign_certificate(par, 3, &s) == LDG_OK);
  CHECK(ldg_sign_cert_feasible(s) == 1);
  ldg_sign_cert_free(s);
  ldg_function_free(par);
}

TEST_CASE("sweep and plot") {
  ldg_sweep_config* cfg = nullptr;
  REQUIRE(ldg_sweep_config_new(&cfg) == LDG_OK);
  const char text[] = "p_list = 5\nsamples = 20\nseed = 3\n";
  REQUIRE(ldg_sweep_config_parse(cfg, text, sizeof text - 1) == LDG_OK);
  REQUIRE(ldg_sweep_config_set(cfg, "threads", "2") == LDG_OK);
  CHECK(ldg_sweep_config_set(cfg, "bogus", "1") == LDG_ERR_PARSE);
  ldg_sweep* s = nullptr;
  REQUIRE(ldg_run_sweep(cfg, &s) == LDG_OK);
  REQUIRE(ldg_sweep_cell_count(s) == 6);
  int p = 0, d = 0;
  double rate = 0;
  REQUIRE(ldg_sweep_cell_rate(s, 5, &p, &d, &rate) == LDG_OK);
  CHECK(p == 5);
  CHECK(d == 5);
  CHECK(rate == 1.0);
  char* csv = nullptr;
  REQUIRE(ldg_sweep_report(s, LDG_FORMAT_CSV, &csv) == LDG_OK);
  const auto body = take(csv);
  char* svg = nullptr;
  REQUIRE(ldg_plot_svg(body.data(), body.size(), &svg) == LDG_OK);
  CHECK(take(svg).find("<polyline") != std::string::npos);
  CHECK(ldg_plot_svg("p,d\n", 4, &svg) == LDG_ERR_PARSE);
  ldg_sweep_free(s);
  ldg_sweep_config_free(cfg);
}
