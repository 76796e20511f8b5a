#include "lowdeg/experiments.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "lowdeg/collision.hpp"
#include "lowdeg/competitor.hpp"
#include "lowdeg/determinacy.hpp"
#include "lowdeg/error.hpp"
#include "lowdeg/parallel.hpp"
#include "lowdeg/random.hpp"

namespace lowdeg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return out;
    s.remove_prefix(pos + 1);
  }
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    fail(ErrorCode::Parse, "invalid value '" + std::string(text) + "' for " + std::string(key));
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  fail(ErrorCode::Parse, "invalid boolean '" + std::string(text) + "' for " + std::string(key));
}

std::vector<int> parse_int_list(std::string_view key, std::string_view text) {
  std::vector<int> out;
  for (auto item : split(trim(text), ',')) out.push_back(parse_number<int>(key, item));
  return out;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void validate(const SweepConfig& c) {
  require(!c.p_list.empty(), "sweep: p_list must not be empty");
  for (int p : c.p_list) check_dim(p);
  for (int d : c.d_list) require(d >= 0, "sweep: d values must be nonnegative");
  require(c.samples >= 1, "sweep: samples must be at least 1");
  require(c.eta > 0 && c.eta <= 1, "sweep: eta must lie in (0, 1]");
  require(c.omega >= 0 && std::isfinite(c.omega), "sweep: omega must be finite and nonnegative");
  require(c.threads >= 1, "sweep: threads must be at least 1");
  for (int p : c.p_list) {
    if (c.run_exact_enum && p > kMaxExactDim)
      fail(ErrorCode::Limit, "sweep: run_exact_enum requires p <= " + std::to_string(kMaxExactDim));
    if (c.run_lp && p > kMaxLpDim) fail(ErrorCode::Limit, "sweep: run_lp requires p <= " + std::to_string(kMaxLpDim));
  }
}

void apply_sweep_setting(SweepConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "p_list") {
    c.p_list = parse_int_list(key, value);
  } else if (key == "d_list") {
    if (trim(value) == "all")
      c.d_list.clear();
    else
      c.d_list = parse_int_list(key, value);
  } else if (key == "samples") {
    c.samples = parse_number<std::uint64_t>(key, value);
    require(c.samples >= 1, "sweep: samples must be at least 1");
  } else if (key == "eta") {
    c.eta = parse_number<double>(key, value);
  } else if (key == "omega") {
    c.omega = parse_number<double>(key, value);
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    c.threads = parse_number<int>(key, value);
  } else if (key == "run_certificate") {
    c.run_certificate = parse_bool(key, value);
  } else if (key == "run_exact_enum") {
    c.run_exact_enum = parse_bool(key, value);
  } else if (key == "run_anneal") {
    c.run_anneal = parse_bool(key, value);
  } else if (key == "run_lp") {
    c.run_lp = parse_bool(key, value);
  } else {
    fail(ErrorCode::Parse, "unknown sweep setting '" + std::string(key) + "'");
  }
}

void parse_sweep_config(std::string_view text, SweepConfig& config) {
  for (auto line : split(text, '\n')) {
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorCode::Parse, "sweep config: expected key = value, got '" + std::string(line) + "'");
    apply_sweep_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
}

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig c;
  parse_sweep_config(text, c);
  return c;
}

std::optional<double> SweepCell::success_rate() const {
  if (!certificate_run) return std::nullopt;
  return static_cast<double>(certified) / static_cast<double>(samples);
}

std::optional<double> SweepCell::mean_eta() const {
  if (!certificate_run) return std::nullopt;
  return static_cast<double>(residual_sum) / (std::ldexp(1.0, p) * static_cast<double>(samples));
}

std::optional<double> SweepCell::max_eta() const {
  if (!certificate_run) return std::nullopt;
  return static_cast<double>(residual_max) / std::ldexp(1.0, p);
}

std::optional<double> SweepCell::collision_rate() const {
  if (!collisions) return std::nullopt;
  return static_cast<double>(*collisions) / static_cast<double>(samples);
}

std::optional<double> SweepCell::lp_zero_rate() const {
  if (!lp_zero) return std::nullopt;
  return static_cast<double>(*lp_zero) / static_cast<double>(samples);
}

std::vector<SweepCell> run_sweep(const SweepConfig& config) {
  validate(config);
  std::vector<SweepCell> cells;
  std::uint64_t cell_index = 0;
  for (int p : config.p_list) {
    std::vector<int> ds;
    if (config.d_list.empty())
      for (int d = 0; d <= p; ++d) ds.push_back(d);
    else
      for (int d : config.d_list)
        if (d <= p) ds.push_back(d);

    for (int d : ds) {
      const auto bounds = probability_bounds(p, d, config.eta, config.omega);
      SweepCell cell;
      cell.p = p;
      cell.d = d;
      cell.samples = config.samples;
      cell.seed = config.seed;
      cell.certificate_run = config.run_certificate;
      cell.low_count = bounds.low_count;
      cell.high_count = bounds.high_count;
      cell.residual_variance = bounds.residual_variance;
      cell.log_nonuniqueness_bound = bounds.log_nonuniqueness_bound;
      cell.log_uniqueness_failure_bound = bounds.log_uniqueness_failure_bound;
      cell.d_lower = bounds.d_lower;
      cell.d_upper = bounds.d_upper;

      struct Outcome {
        bool holds = false;
        std::int64_t residual = 0;
        bool collision = false;
        bool lp_zero = false;
      };
      std::vector<Outcome> out(config.samples);
      const bool search = config.run_exact_enum || config.run_anneal;
      parallel_for(config.samples, config.threads, [&](std::uint64_t i) {
        const auto key = substream_key(config.seed, cell_index * config.samples + i);
        const auto f = sample_function(p, key);
        auto& o = out[i];
        if (config.run_certificate) {
          const auto c = certify_unique(truncate(f, spectrum(f), d), f);
          o.holds = c.holds;
          o.residual = c.max_residual_num;
        }
        if (config.run_exact_enum) {
          o.collision = collide_exact(f, d).witness.has_value();
        } else if (config.run_anneal) {
          AnnealParams params;
          params.seed = splitmix_mix(key);
          o.collision = collide_anneal(f, d, params).has_value();
        }
        if (config.run_lp) o.lp_zero = sgn(max_competitor(f, d).optimum) == 0;
      });

      if (search) cell.collisions = 0;
      if (config.run_lp) cell.lp_zero = 0;
      for (const auto& o : out) {
        cell.certified += o.holds;
        cell.residual_sum += o.residual;
        cell.residual_max = std::max(cell.residual_max, o.residual);
        if (search) *cell.collisions += o.collision;
        if (config.run_lp) *cell.lp_zero += o.lp_zero;
      }
      cells.push_back(cell);
      ++cell_index;
    }
  }
  return cells;
}

SweepRow to_row(const SweepCell& c) {
  return {c.p,
          c.d,
          c.samples,
          c.seed,
          c.success_rate(),
          c.mean_eta(),
          c.max_eta(),
          c.collision_rate(),
          c.lp_zero_rate(),
          c.low_count,
          c.high_count,
          c.residual_variance,
          c.log_nonuniqueness_bound,
          c.log_uniqueness_failure_bound,
          c.d_lower,
          c.d_upper};
}

std::string emit_csv(const std::vector<SweepCell>& cells) {
  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (const auto& c : cells) rows.push_back(to_row(c));
  return emit_csv(rows);
}

std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.p) + ',' + std::to_string(r.d) + ',' + std::to_string(r.samples) + ',' +
           std::to_string(r.seed) + ',' + opt(r.success_rate) + ',' + opt(r.mean_eta) + ',' + opt(r.max_eta) + ',' +
           opt(r.collision_rate) + ',' + opt(r.lp_zero_rate) + ',' + std::to_string(r.low_count) + ',' +
           std::to_string(r.high_count) + ',' + format_double(r.residual_variance) + ',' +
           format_double(r.log_nonuniqueness_bound) + ',' + format_double(r.log_uniqueness_failure_bound) + ',' +
           format_double(r.d_lower) + ',' + format_double(r.d_upper) + '\n';
  }
  return out;
}

std::string emit_json(const std::vector<SweepRow>& rows) {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json {
    if (std::isfinite(v)) return v;
    return format_double(v);
  };
  auto optnum = [&](const std::optional<double>& v) -> ordered_json { return v ? num(*v) : ordered_json(nullptr); };
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"p", r.p},
                   {"d", r.d},
                   {"samples", r.samples},
                   {"seed", r.seed},
                   {"success_rate", optnum(r.success_rate)},
                   {"mean_eta", optnum(r.mean_eta)},
                   {"max_eta", optnum(r.max_eta)},
                   {"collision_rate", optnum(r.collision_rate)},
                   {"lp_zero_rate", optnum(r.lp_zero_rate)},
                   {"K_d", r.low_count},
                   {"M_d", r.high_count},
                   {"Md_over_N", num(r.residual_variance)},
                   {"log_nonuniq_bound", num(r.log_nonuniqueness_bound)},
                   {"log_uniq_fail_bound", num(r.log_uniqueness_failure_bound)},
                   {"d_lower", num(r.d_lower)},
                   {"d_upper", num(r.d_upper)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || trim(lines[0]) != kSweepCsvHeader) fail(ErrorCode::Parse, "sweep CSV: unexpected header");
  std::vector<SweepRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split(trim(lines[li]), ',');
    if (f.size() != 16) fail(ErrorCode::Parse, "sweep CSV: line " + std::to_string(li + 1) + " must have 16 fields");
    auto optd = [](std::string_view key, std::string_view s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_number<double>(key, s);
    };
    SweepRow r;
    r.p = parse_number<int>("p", f[0]);
    r.d = parse_number<int>("d", f[1]);
    r.samples = parse_number<std::uint64_t>("samples", f[2]);
    r.seed = parse_number<std::uint64_t>("seed", f[3]);
    r.success_rate = optd("success_rate", f[4]);
    r.mean_eta = optd("mean_eta", f[5]);
    r.max_eta = optd("max_eta", f[6]);
    r.collision_rate = optd("collision_rate", f[7]);
    r.lp_zero_rate = optd("lp_zero_rate", f[8]);
    r.low_count = parse_number<std::uint64_t>("K_d", f[9]);
    r.high_count = parse_number<std::uint64_t>("M_d", f[10]);
    r.residual_variance = parse_number<double>("Md_over_N", f[11]);
    r.log_nonuniqueness_bound = parse_number<double>("log_nonuniq_bound", f[12]);
    r.log_uniqueness_failure_bound = parse_number<double>("log_uniq_fail_bound", f[13]);
    r.d_lower = parse_number<double>("d_lower", f[14]);
    r.d_upper = parse_number<double>("d_upper", f[15]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace lowdeg
