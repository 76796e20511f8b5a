#include "lowdeg/lowdeg.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "lowdeg/boolean_function.hpp"
#include "lowdeg/collision.hpp"
#include "lowdeg/competitor.hpp"
#include "lowdeg/determinacy.hpp"
#include "lowdeg/error.hpp"
#include "lowdeg/experiments.hpp"
#include "lowdeg/plot.hpp"
#include "lowdeg/random.hpp"
#include "lowdeg/report.hpp"
#include "lowdeg/transform.hpp"

struct ldg_function {
  lowdeg::BooleanFunction f;
};

struct ldg_collision {
  int p;
  int d;
  std::optional<lowdeg::CollisionWitness> witness;
  int exhaustive;  // 1, 0, or -1 for heuristic
};

struct ldg_census {
  lowdeg::CensusReport report;
};

struct ldg_competitor {
  int p;
  int d;
  lowdeg::CompetitorResult result;
};

struct ldg_sign_cert {
  int p;
  int d;
  std::optional<lowdeg::SignCertificate> cert;
};

struct ldg_sweep_config {
  lowdeg::SweepConfig config;
};

struct ldg_sweep {
  std::vector<lowdeg::SweepCell> cells;
};

namespace {

thread_local std::string last_error;

ldg_status status_of(lowdeg::ErrorCode code) {
  switch (code) {
    case lowdeg::ErrorCode::InvalidArgument:
      return LDG_ERR_INVALID_ARGUMENT;
    case lowdeg::ErrorCode::Parse:
      return LDG_ERR_PARSE;
    case lowdeg::ErrorCode::Io:
      return LDG_ERR_IO;
    case lowdeg::ErrorCode::Limit:
      return LDG_ERR_LIMIT;
    case lowdeg::ErrorCode::Verification:
      return LDG_ERR_VERIFICATION;
    case lowdeg::ErrorCode::Internal:
      return LDG_ERR_INTERNAL;
  }
  return LDG_ERR_INTERNAL;
}

template <class Fn>
ldg_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return LDG_OK;
  } catch (const lowdeg::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LDG_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LDG_ERR_INTERNAL;
  }
}

void need(const void* ptr, const char* what) {
  if (!ptr) lowdeg::fail(lowdeg::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  need(out, "output string");
  *out = dup_string(s);
}

lowdeg::Format format_of(ldg_format fmt) {
  switch (fmt) {
    case LDG_FORMAT_TEXT:
      return lowdeg::Format::Text;
    case LDG_FORMAT_CSV:
      return lowdeg::Format::Csv;
    case LDG_FORMAT_JSON:
      return lowdeg::Format::Json;
  }
  lowdeg::fail(lowdeg::ErrorCode::InvalidArgument, "unknown output format");
}

ldg_format format_to_c(lowdeg::Format fmt) {
  switch (fmt) {
    case lowdeg::Format::Text:
      return LDG_FORMAT_TEXT;
    case lowdeg::Format::Csv:
      return LDG_FORMAT_CSV;
    case lowdeg::Format::Json:
      return LDG_FORMAT_JSON;
  }
  return LDG_FORMAT_TEXT;
}

void check_length(const ldg_function* f, size_t len) {
  need(f, "function");
  if (len != f->f.size()) lowdeg::fail(lowdeg::ErrorCode::InvalidArgument, "buffer length must equal 2^p");
}

}  // namespace

extern "C" {

const char* ldg_last_error(void) { return last_error.c_str(); }
const char* ldg_version(void) { return "1.0.0"; }
void ldg_string_free(char* s) { std::free(s); }

ldg_status ldg_parse_format(const char* name, ldg_format* out) {
  return guarded([&] {
    need(name, "format name");
    need(out, "output");
    *out = format_to_c(lowdeg::parse_format(name));
  });
}

ldg_status ldg_function_from_signs(int p, const int8_t* signs, size_t len, ldg_function** out) {
  return guarded([&] {
    need(signs, "signs");
    need(out, "output");
    std::vector<int> v(signs, signs + len);
    *out = new ldg_function{lowdeg::BooleanFunction::from_signs(p, v)};
  });
}

ldg_status ldg_function_parse_wbf(const char* text, size_t len, ldg_function** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output");
    *out = new ldg_function{lowdeg::parse_wbf(std::string_view(text, len))};
  });
}

ldg_status ldg_function_load(const char* path, ldg_function** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output");
    std::ifstream in(path, std::ios::binary);
    if (!in) lowdeg::fail(lowdeg::ErrorCode::Io, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.starts_with("WBF1"))
      *out = new ldg_function{lowdeg::parse_wbf(text)};
    else
      *out = new ldg_function{lowdeg::function_from_spectrum(lowdeg::parse_spectrum(text))};
  });
}

ldg_status ldg_function_sample(int p, uint64_t seed, uint64_t index, ldg_function** out) {
  return guarded([&] {
    need(out, "output");
    *out = new ldg_function{lowdeg::sample_function(p, lowdeg::substream_key(seed, index))};
  });
}

ldg_status ldg_function_character(int p, uint64_t mask, ldg_function** out) {
  return guarded([&] {
    need(out, "output");
    *out = new ldg_function{lowdeg::BooleanFunction::character(p, mask)};
  });
}

ldg_status ldg_function_format_wbf(const ldg_function* f, char** out) {
  return guarded([&] {
    need(f, "function");
    emit(out, lowdeg::format_wbf(f->f));
  });
}

int ldg_function_dim(const ldg_function* f) { return f ? f->f.dim() : 0; }

int ldg_function_value(const ldg_function* f, uint64_t mask) {
  if (!f || mask >= f->f.size()) return 0;
  return f->f.value(mask);
}

void ldg_function_free(ldg_function* f) { delete f; }

ldg_status ldg_wht(int64_t* values, size_t len) {
  return guarded([&] {
    need(values, "values");
    lowdeg::wht(std::span<std::int64_t>(values, len));
  });
}

ldg_status ldg_spectrum(const ldg_function* f, int64_t* out, size_t len) {
  return guarded([&] {
    check_length(f, len);
    need(out, "output");
    const auto s = lowdeg::spectrum(f->f);
    std::copy(s.coeffs.begin(), s.coeffs.end(), out);
  });
}

ldg_status ldg_truncate(const ldg_function* f, int d, int64_t* trunc, int64_t* residual, size_t len) {
  return guarded([&] {
    check_length(f, len);
    const auto t = lowdeg::truncate(f->f, d);
    if (trunc) std::copy(t.trunc_numerators.begin(), t.trunc_numerators.end(), trunc);
    if (residual) std::copy(t.residual_numerators.begin(), t.residual_numerators.end(), residual);
  });
}

ldg_status ldg_spectrum_report(const ldg_function* f, ldg_format fmt, char** out) {
  return guarded([&] {
    need(f, "function");
    emit(out, lowdeg::format_spectrum(lowdeg::spectrum(f->f), format_of(fmt)));
  });
}

ldg_status ldg_certify_unique(const ldg_function* f, int d, ldg_certificate* out) {
  return guarded([&] {
    need(f, "function");
    need(out, "output");
    const auto c = lowdeg::certify_unique(f->f, d);
    *out = {c.p, c.d, c.holds, c.sign_agrees, c.max_residual_num, c.argmax_point, c.denominator, c.eta_hat()};
  });
}

ldg_status ldg_certificate_report(const ldg_function* f, int d, ldg_format fmt, char** out) {
  return guarded([&] {
    need(f, "function");
    emit(out, lowdeg::format_certificate(lowdeg::certify_unique(f->f, d), format_of(fmt)));
  });
}

ldg_status ldg_binomial_cumulative(int p, int d, uint64_t* low, uint64_t* high) {
  return guarded([&] {
    const auto c = lowdeg::binomial_cumulative(p, d);
    if (low) *low = c.low;
    if (high) *high = c.high;
  });
}

ldg_status ldg_hoeffding_tail(int p, double t, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = lowdeg::hoeffding_tail(p, t);
  });
}

ldg_status ldg_rademacher_tail(double sq_norm, double eta, double* out) {
  return guarded([&] {
    need(out, "output");
    *out = lowdeg::rademacher_tail(sq_norm, eta);
  });
}

ldg_status ldg_thresholds(int p, double omega, double eta, double* lower, double* upper) {
  return guarded([&] {
    const auto t = lowdeg::thresholds(p, omega, eta);
    if (lower) *lower = t.lower;
    if (upper) *upper = t.upper;
  });
}

ldg_status ldg_thresholds_report(int p, double omega, double eta, ldg_format fmt, char** out) {
  return guarded([&] {
    emit(out, lowdeg::format_thresholds(p, omega, eta, lowdeg::thresholds(p, omega, eta), format_of(fmt)));
  });
}

ldg_status ldg_probability_bounds(int p, int d, double eta, double omega, ldg_bounds* out) {
  return guarded([&] {
    need(out, "output");
    const auto b = lowdeg::probability_bounds(p, d, eta, omega);
    *out = {b.p,
            b.d,
            b.eta,
            b.omega,
            b.low_count,
            b.high_count,
            b.residual_variance,
            b.log_nonuniqueness_bound,
            b.log_uniqueness_failure_bound,
            b.nonuniqueness_vacuous,
            b.uniqueness_failure_vacuous,
            b.d_lower,
            b.d_upper};
  });
}

ldg_status ldg_bounds_report(int p, int d, double eta, double omega, ldg_format fmt, char** out) {
  return guarded([&] { emit(out, lowdeg::format_bounds(lowdeg::probability_bounds(p, d, eta, omega), format_of(fmt))); });
}

void ldg_anneal_params_default(ldg_anneal_params* params) {
  if (!params) return;
  const lowdeg::AnnealParams def;
  *params = {def.restarts, def.max_iters, def.init_temp, def.cooling, def.seed};
}

ldg_status ldg_collide_exact(const ldg_function* f, int d, ldg_collision** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "output");
    auto r = lowdeg::collide_exact(f->f, d);
    *out = new ldg_collision{f->f.dim(), d, std::move(r.witness), r.exhaustive ? 1 : 0};
  });
}

ldg_status ldg_collide_anneal(const ldg_function* f, int d, const ldg_anneal_params* params, int threads,
                              ldg_collision** out) {
  return guarded([&] {
    need(f, "function");
    need(params, "params");
    need(out, "output");
    lowdeg::AnnealParams ap{params->restarts, params->max_iters, params->init_temp, params->cooling, params->seed};
    *out = new ldg_collision{f->f.dim(), d, lowdeg::collide_anneal(f->f, d, ap, threads), -1};
  });
}

int ldg_collision_found(const ldg_collision* c) { return c && c->witness ? 1 : 0; }
int ldg_collision_exhaustive(const ldg_collision* c) { return c ? c->exhaustive : -1; }
size_t ldg_collision_size(const ldg_collision* c) { return c && c->witness ? c->witness->flip_set.size() : 0; }

uint64_t ldg_collision_mask(const ldg_collision* c, size_t i) {
  if (!c || !c->witness || i >= c->witness->flip_set.size()) return 0;
  return c->witness->flip_set[i];
}

ldg_status ldg_collision_report(const ldg_collision* c, ldg_format fmt, char** out) {
  return guarded([&] {
    need(c, "collision");
    std::optional<bool> exh;
    if (c->exhaustive >= 0) exh = c->exhaustive == 1;
    emit(out, lowdeg::format_witness(c->p, c->d, c->witness, exh, format_of(fmt)));
  });
}

void ldg_collision_free(ldg_collision* c) { delete c; }

ldg_status ldg_verify_witness(const ldg_function* f, int d, const uint64_t* masks, size_t n, int* ok) {
  return guarded([&] {
    need(f, "function");
    need(ok, "output");
    if (n) need(masks, "masks");
    std::vector<std::uint64_t> t(masks, masks + n);
    *ok = lowdeg::verify_witness(f->f, d, t);
  });
}

ldg_status ldg_collide_census(int p, int d, uint64_t samples, uint64_t seed, int threads, ldg_census** out) {
  return guarded([&] {
    need(out, "output");
    *out = new ldg_census{lowdeg::collide_census(p, d, samples, seed, threads)};
  });
}

uint64_t ldg_census_distinct_keys(const ldg_census* c) { return c ? c->report.distinct_keys : 0; }
size_t ldg_census_pair_count(const ldg_census* c) { return c ? c->report.collision_pairs.size() : 0; }

ldg_status ldg_census_pair(const ldg_census* c, size_t i, uint64_t* first, uint64_t* second) {
  return guarded([&] {
    need(c, "census");
    lowdeg::require(i < c->report.collision_pairs.size(), "pair index out of range");
    if (first) *first = c->report.collision_pairs[i].first;
    if (second) *second = c->report.collision_pairs[i].second;
  });
}

ldg_status ldg_census_report(const ldg_census* c, ldg_format fmt, char** out) {
  return guarded([&] {
    need(c, "census");
    emit(out, lowdeg::format_census(c->report, format_of(fmt)));
  });
}

ldg_status ldg_census_pairs_text(const ldg_census* c, char** out) {
  return guarded([&] {
    need(c, "census");
    emit(out, lowdeg::format_census_pairs(c->report));
  });
}

void ldg_census_free(ldg_census* c) { delete c; }

ldg_status ldg_max_competitor(const ldg_function* f, int d, ldg_competitor** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "output");
    *out = new ldg_competitor{f->f.dim(), d, lowdeg::max_competitor(f->f, d)};
  });
}

int ldg_competitor_is_zero(const ldg_competitor* c) { return c && sgn(c->result.optimum) == 0 ? 1 : 0; }

ldg_status ldg_competitor_optimum(const ldg_competitor* c, char** fraction) {
  return guarded([&] {
    need(c, "competitor");
    emit(fraction, lowdeg::fraction(c->result.optimum));
  });
}

ldg_status ldg_competitor_value(const ldg_competitor* c, uint64_t mask, char** fraction) {
  return guarded([&] {
    need(c, "competitor");
    lowdeg::require(c->result.witness.has_value(), "no competitor witness (optimum is 0)");
    lowdeg::require(mask < c->result.witness->h.size(), "mask out of range");
    emit(fraction, lowdeg::fraction(c->result.witness->h[mask]));
  });
}

ldg_status ldg_competitor_report(const ldg_competitor* c, ldg_format fmt, char** out) {
  return guarded([&] {
    need(c, "competitor");
    emit(out, lowdeg::format_competitor(c->p, c->d, c->result, format_of(fmt)));
  });
}

void ldg_competitor_free(ldg_competitor* c) { delete c; }

ldg_status ldg_sign_certificate(const ldg_function* f, int d, ldg_sign_cert** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "output");
    *out = new ldg_sign_cert{f->f.dim(), d, lowdeg::sign_certificate(f->f, d)};
  });
}

int ldg_sign_cert_feasible(const ldg_sign_cert* c) { return c && c->cert ? 1 : 0; }

ldg_status ldg_sign_cert_report(const ldg_sign_cert* c, ldg_format fmt, char** out) {
  return guarded([&] {
    need(c, "certificate");
    emit(out, lowdeg::format_sign_certificate(c->p, c->d, c->cert, format_of(fmt)));
  });
}

void ldg_sign_cert_free(ldg_sign_cert* c) { delete c; }

ldg_status ldg_sweep_config_new(ldg_sweep_config** out) {
  return guarded([&] {
    need(out, "output");
    *out = new ldg_sweep_config{};
  });
}

ldg_status ldg_sweep_config_parse(ldg_sweep_config* cfg, const char* text, size_t len) {
  return guarded([&] {
    need(cfg, "config");
    need(text, "text");
    lowdeg::parse_sweep_config(std::string_view(text, len), cfg->config);
  });
}

ldg_status ldg_sweep_config_set(ldg_sweep_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "config");
    need(key, "key");
    need(value, "value");
    lowdeg::apply_sweep_setting(cfg->config, key, value);
  });
}

void ldg_sweep_config_free(ldg_sweep_config* cfg) { delete cfg; }

ldg_status ldg_run_sweep(const ldg_sweep_config* cfg, ldg_sweep** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "output");
    *out = new ldg_sweep{lowdeg::run_sweep(cfg->config)};
  });
}

size_t ldg_sweep_cell_count(const ldg_sweep* s) { return s ? s->cells.size() : 0; }

ldg_status ldg_sweep_cell_rate(const ldg_sweep* s, size_t i, int* p, int* d, double* success_rate) {
  return guarded([&] {
    need(s, "sweep");
    lowdeg::require(i < s->cells.size(), "cell index out of range");
    const auto& c = s->cells[i];
    if (p) *p = c.p;
    if (d) *d = c.d;
    if (success_rate) *success_rate = c.success_rate().value_or(-1.0);
  });
}

ldg_status ldg_sweep_report(const ldg_sweep* s, ldg_format fmt, char** out) {
  return guarded([&] {
    need(s, "sweep");
    std::vector<lowdeg::SweepRow> rows;
    for (const auto& c : s->cells) rows.push_back(lowdeg::to_row(c));
    switch (format_of(fmt)) {
      case lowdeg::Format::Json:
        emit(out, lowdeg::emit_json(rows));
        break;
      case lowdeg::Format::Csv:
      case lowdeg::Format::Text:
        emit(out, lowdeg::emit_csv(rows));
        break;
    }
  });
}

void ldg_sweep_free(ldg_sweep* s) { delete s; }

ldg_status ldg_plot_svg(const char* csv, size_t len, char** out) {
  return guarded([&] {
    need(csv, "csv");
    emit(out, lowdeg::emit_svg(lowdeg::parse_sweep_csv(std::string_view(csv, len))));
  });
}

}  // extern "C"
