/*
 * lowdeg C API.
 *
 * Every fallible call returns an ldg_status; on failure ldg_last_error()
 * returns a one-line message for the calling thread. Objects are opaque
 * handles released with their matching *_free function. Strings returned
 * through `char** out` are heap-allocated and released with ldg_string_free.
 */
#ifndef LOWDEG_H
#define LOWDEG_H

#include <stddef.h>
#include <stdint.h>

#if defined(LOWDEG_BUILDING_LIBRARY)
#define LDG_API __attribute__((visibility("default")))
#else
#define LDG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ldg_status {
  LDG_OK = 0,
  LDG_ERR_INVALID_ARGUMENT = 1,
  LDG_ERR_PARSE = 2,
  LDG_ERR_IO = 3,
  LDG_ERR_LIMIT = 4,
  LDG_ERR_VERIFICATION = 5,
  LDG_ERR_INTERNAL = 6
} ldg_status;

typedef enum ldg_format { LDG_FORMAT_TEXT = 0, LDG_FORMAT_CSV = 1, LDG_FORMAT_JSON = 2 } ldg_format;

LDG_API const char* ldg_last_error(void);
LDG_API const char* ldg_version(void);
LDG_API void ldg_string_free(char* s);
LDG_API ldg_status ldg_parse_format(const char* name, ldg_format* out);

/* ---- Boolean functions ------------------------------------------------- */

typedef struct ldg_function ldg_function;

/* signs[m] in {-1, +1} is f(x_m); len must be 2^p. */
LDG_API ldg_status ldg_function_from_signs(int p, const int8_t* signs, size_t len, ldg_function** out);
LDG_API ldg_status ldg_function_parse_wbf(const char* text, size_t len, ldg_function** out);
/* Reads a WBF1 file, or a spectrum file written by ldg_spectrum_report (inverted back to f). */
LDG_API ldg_status ldg_function_load(const char* path, ldg_function** out);
LDG_API ldg_status ldg_function_sample(int p, uint64_t seed, uint64_t index, ldg_function** out);
LDG_API ldg_status ldg_function_character(int p, uint64_t mask, ldg_function** out);
LDG_API ldg_status ldg_function_format_wbf(const ldg_function* f, char** out);
LDG_API int ldg_function_dim(const ldg_function* f);
LDG_API int ldg_function_value(const ldg_function* f, uint64_t mask);
LDG_API void ldg_function_free(ldg_function* f);

/* ---- transforms -------------------------------------------------------- */

/* In-place unnormalized Walsh-Hadamard transform; len a power of two <= 2^24. */
LDG_API ldg_status ldg_wht(int64_t* values, size_t len);
LDG_API ldg_status ldg_spectrum(const ldg_function* f, int64_t* out, size_t len);
/* trunc[m] = N q_d(x_m), residual[m] = N r_d(x_m); either pointer may be NULL. */
LDG_API ldg_status ldg_truncate(const ldg_function* f, int d, int64_t* trunc, int64_t* residual, size_t len);
LDG_API ldg_status ldg_spectrum_report(const ldg_function* f, ldg_format fmt, char** out);

/* ---- determinacy ------------------------------------------------------- */

typedef struct ldg_certificate {
  int p;
  int d;
  int holds;
  int sign_agrees;
  int64_t max_residual_num;
  uint64_t argmax_point;
  int64_t denominator;
  double eta_hat;
} ldg_certificate;

typedef struct ldg_bounds {
  int p;
  int d;
  double eta;
  double omega;
  uint64_t low_count;  /* K_d */
  uint64_t high_count; /* M_d */
  double residual_variance;
  double log_nonuniqueness_bound;
  double log_uniqueness_failure_bound;
  int nonuniqueness_vacuous;
  int uniqueness_failure_vacuous;
  double d_lower;
  double d_upper;
} ldg_bounds;

LDG_API ldg_status ldg_certify_unique(const ldg_function* f, int d, ldg_certificate* out);
LDG_API ldg_status ldg_certificate_report(const ldg_function* f, int d, ldg_format fmt, char** out);
LDG_API ldg_status ldg_binomial_cumulative(int p, int d, uint64_t* low, uint64_t* high);
LDG_API ldg_status ldg_hoeffding_tail(int p, double t, double* out);
LDG_API ldg_status ldg_rademacher_tail(double sq_norm, double eta, double* out);
LDG_API ldg_status ldg_thresholds(int p, double omega, double eta, double* lower, double* upper);
LDG_API ldg_status ldg_thresholds_report(int p, double omega, double eta, ldg_format fmt, char** out);
LDG_API ldg_status ldg_probability_bounds(int p, int d, double eta, double omega, ldg_bounds* out);
LDG_API ldg_status ldg_bounds_report(int p, int d, double eta, double omega, ldg_format fmt, char** out);

/* ---- Boolean collisions ------------------------------------------------ */

typedef struct ldg_collision ldg_collision;

typedef struct ldg_anneal_params {
  int restarts;
  uint64_t max_iters; /* 0: 50 * N */
  double init_temp;   /* 0: N */
  double cooling;
  uint64_t seed;
} ldg_anneal_params;

LDG_API void ldg_anneal_params_default(ldg_anneal_params* params);
LDG_API ldg_status ldg_collide_exact(const ldg_function* f, int d, ldg_collision** out);
LDG_API ldg_status ldg_collide_anneal(const ldg_function* f, int d, const ldg_anneal_params* params, int threads,
                                      ldg_collision** out);
LDG_API int ldg_collision_found(const ldg_collision* c);
/* 1 if the search was exhaustive, 0 if not, -1 for heuristic searches. */
LDG_API int ldg_collision_exhaustive(const ldg_collision* c);
LDG_API size_t ldg_collision_size(const ldg_collision* c);
LDG_API uint64_t ldg_collision_mask(const ldg_collision* c, size_t i);
LDG_API ldg_status ldg_collision_report(const ldg_collision* c, ldg_format fmt, char** out);
LDG_API void ldg_collision_free(ldg_collision* c);
LDG_API ldg_status ldg_verify_witness(const ldg_function* f, int d, const uint64_t* masks, size_t n, int* ok);

typedef struct ldg_census ldg_census;

LDG_API ldg_status ldg_collide_census(int p, int d, uint64_t samples, uint64_t seed, int threads, ldg_census** out);
LDG_API uint64_t ldg_census_distinct_keys(const ldg_census* c);
LDG_API size_t ldg_census_pair_count(const ldg_census* c);
LDG_API ldg_status ldg_census_pair(const ldg_census* c, size_t i, uint64_t* first, uint64_t* second);
LDG_API ldg_status ldg_census_report(const ldg_census* c, ldg_format fmt, char** out);
LDG_API ldg_status ldg_census_pairs_text(const ldg_census* c, char** out);
LDG_API void ldg_census_free(ldg_census* c);

/* ---- bounded competitors (LP) ------------------------------------------ */

typedef struct ldg_competitor ldg_competitor;
typedef struct ldg_sign_cert ldg_sign_cert;

LDG_API ldg_status ldg_max_competitor(const ldg_function* f, int d, ldg_competitor** out);
/* 1 iff the optimum is exactly zero. */
LDG_API int ldg_competitor_is_zero(const ldg_competitor* c);
LDG_API ldg_status ldg_competitor_optimum(const ldg_competitor* c, char** fraction);
/* h(x_mask) as "num/den"; fails when no witness exists. */
LDG_API ldg_status ldg_competitor_value(const ldg_competitor* c, uint64_t mask, char** fraction);
LDG_API ldg_status ldg_competitor_report(const ldg_competitor* c, ldg_format fmt, char** out);
LDG_API void ldg_competitor_free(ldg_competitor* c);

LDG_API ldg_status ldg_sign_certificate(const ldg_function* f, int d, ldg_sign_cert** out);
LDG_API int ldg_sign_cert_feasible(const ldg_sign_cert* c);
LDG_API ldg_status ldg_sign_cert_report(const ldg_sign_cert* c, ldg_format fmt, char** out);
LDG_API void ldg_sign_cert_free(ldg_sign_cert* c);

/* ---- sweeps and plots -------------------------------------------------- */

typedef struct ldg_sweep_config ldg_sweep_config;
typedef struct ldg_sweep ldg_sweep;

LDG_API ldg_status ldg_sweep_config_new(ldg_sweep_config** out);
/* Flat key=value text, same keys as ldg_sweep_config_set. */
LDG_API ldg_status ldg_sweep_config_parse(ldg_sweep_config* cfg, const char* text, size_t len);
/* Keys: p_list, d_list, samples, eta, omega, seed, threads, run_certificate,
   run_exact_enum, run_anneal, run_lp. */
LDG_API ldg_status ldg_sweep_config_set(ldg_sweep_config* cfg, const char* key, const char* value);
LDG_API void ldg_sweep_config_free(ldg_sweep_config* cfg);

LDG_API ldg_status ldg_run_sweep(const ldg_sweep_config* cfg, ldg_sweep** out);
LDG_API size_t ldg_sweep_cell_count(const ldg_sweep* s);
LDG_API ldg_status ldg_sweep_cell_rate(const ldg_sweep* s, size_t i, int* p, int* d, double* success_rate);
LDG_API ldg_status ldg_sweep_report(const ldg_sweep* s, ldg_format fmt, char** out);
LDG_API void ldg_sweep_free(ldg_sweep* s);

/* SVG chart from sweep CSV text. */
LDG_API ldg_status ldg_plot_svg(const char* csv, size_t len, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LOWDEG_H */
