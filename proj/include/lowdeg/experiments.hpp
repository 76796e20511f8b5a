#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lowdeg {

struct SweepConfig {
  std::vector<int> p_list;
  std::vector<int> d_list;  // empty means every d in 0..p
  std::uint64_t samples = 1000;
  double eta = 1.0;
  double omega = 1.0;
  std::uint64_t seed = 0;
  bool run_certificate = true;
  bool run_exact_enum = false;  // p <= 4
  bool run_anneal = false;
  bool run_lp = false;  // p <= 8
  int threads = 1;
};

// Explicit d values above a cell's p are skipped for that p.
void validate(const SweepConfig& config);

// Keys: p_list, d_list ("all" or a comma list), samples, eta, omega, seed,
// threads, run_certificate, run_exact_enum, run_anneal, run_lp.
void apply_sweep_setting(SweepConfig& config, std::string_view key, std::string_view value);
// Flat `key = value` lines; '#' starts a comment.
SweepConfig parse_sweep_config(std::string_view text);
void parse_sweep_config(std::string_view text, SweepConfig& config);

struct SweepCell {
  int p = 0;
  int d = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool certificate_run = true;
  std::uint64_t certified = 0;  // samples whose certificate holds
  std::int64_t residual_sum = 0;  // sum of max |N r_d| over samples
  std::int64_t residual_max = 0;
  std::optional<std::uint64_t> collisions;  // samples with a found Boolean collision
  std::optional<std::uint64_t> lp_zero;     // samples with LP optimum 0
  // theory columns
  std::uint64_t low_count = 0;
  std::uint64_t high_count = 0;
  double residual_variance = 0;
  double log_nonuniqueness_bound = 0;
  double log_uniqueness_failure_bound = 0;
  double d_lower = 0;
  double d_upper = 0;

  std::optional<double> success_rate() const;
  std::optional<double> mean_eta() const;
  std::optional<double> max_eta() const;
  std::optional<double> collision_rate() const;
  std::optional<double> lp_zero_rate() const;
};

std::vector<SweepCell> run_sweep(const SweepConfig& config);

inline constexpr std::string_view kSweepCsvHeader =
    "p,d,samples,seed,success_rate,mean_eta,max_eta,collision_rate,lp_zero_rate,K_d,M_d,Md_over_N,"
    "log_nonuniq_bound,log_uniq_fail_bound,d_lower,d_upper";

// Rows of the sweep table: either as read back from CSV or derived from cells.
struct SweepRow {
  int p = 0;
  int d = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> success_rate;
  std::optional<double> mean_eta;
  std::optional<double> max_eta;
  std::optional<double> collision_rate;
  std::optional<double> lp_zero_rate;
  std::uint64_t low_count = 0;
  std::uint64_t high_count = 0;
  double residual_variance = 0;
  double log_nonuniqueness_bound = 0;
  double log_uniqueness_failure_bound = 0;
  double d_lower = 0;
  double d_upper = 0;
};

SweepRow to_row(const SweepCell& cell);
std::string emit_csv(const std::vector<SweepCell>& cells);
std::string emit_csv(const std::vector<SweepRow>& rows);
std::string emit_json(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

// Shortest round-trip decimal; infinities as "inf" / "-inf".
std::string format_double(double v);

}  // namespace lowdeg
