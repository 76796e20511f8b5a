#include "lowdeg/report.hpp"

#include <bit>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "lowdeg/error.hpp"
#include "lowdeg/experiments.hpp"

namespace lowdeg {

using nlohmann::ordered_json;

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

ordered_json jnum(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string join_masks(const std::vector<std::uint64_t>& masks) {
  std::string out;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(masks[i]);
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    fail(ErrorCode::Parse, "spectrum: malformed integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  fail(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "' (expected csv, json or text)");
}

std::string fraction(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

std::string format_spectrum(const Spectrum& s, Format fmt) {
  std::string out;
  switch (fmt) {
    case Format::Text:
      out = "spectrum p=" + std::to_string(s.p) + " N=" + std::to_string(s.size()) + "\nmask degree S_J\n";
      for (std::uint64_t m = 0; m < s.size(); ++m)
        out += std::to_string(m) + ' ' + std::to_string(degree(m)) + ' ' + std::to_string(s.coeffs[m]) + '\n';
      return out;
    case Format::Csv:
      out = "mask,degree,coeff\n";
      for (std::uint64_t m = 0; m < s.size(); ++m)
        out += std::to_string(m) + ',' + std::to_string(degree(m)) + ',' + std::to_string(s.coeffs[m]) + '\n';
      return out;
    case Format::Json: {
      ordered_json j = {{"p", s.p}, {"N", s.size()}, {"coeffs", s.coeffs}};
      return j.dump() + "\n";
    }
  }
  return out;
}

Spectrum parse_spectrum(std::string_view text) {
  Spectrum s;
  if (!text.empty() && text.front() == '{') {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
      s.p = j.at("p").get<int>();
      s.coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::Parse, std::string("spectrum JSON: ") + e.what());
    }
  } else {
    const auto lines = lines_of(text);
    std::size_t first = 0;
    char sep = ',';
    int declared_p = -1;
    if (!lines.empty() && lines[0] == "mask,degree,coeff") {
      first = 1;
    } else if (lines.size() >= 2 && lines[0].starts_with("spectrum p=") && lines[1] == "mask degree S_J") {
      const auto head = lines[0].substr(11);
      declared_p = static_cast<int>(to_int(head.substr(0, head.find(' '))));
      first = 2;
      sep = ' ';
    } else {
      fail(ErrorCode::Parse, "unrecognized spectrum layout");
    }
    for (std::size_t i = first; i < lines.size(); ++i) {
      const auto line = lines[i];
      const auto a = line.find(sep), b = line.find(sep, a + 1);
      if (a == std::string_view::npos || b == std::string_view::npos)
        fail(ErrorCode::Parse, "spectrum: expected mask, degree and coefficient");
      const auto mask = to_int(line.substr(0, a));
      const auto deg = to_int(line.substr(a + 1, b - a - 1));
      if (mask != static_cast<std::int64_t>(s.coeffs.size()) || deg != degree(static_cast<std::uint64_t>(mask)))
        fail(ErrorCode::Parse, "spectrum: masks must be listed in order with their degree");
      s.coeffs.push_back(to_int(line.substr(b + 1)));
    }
    const auto n = s.coeffs.size();
    if (n < 2 || !std::has_single_bit(n)) fail(ErrorCode::Parse, "spectrum: coefficient count must be 2^p");
    s.p = std::countr_zero(n);
    if (declared_p >= 0 && declared_p != s.p) fail(ErrorCode::Parse, "spectrum: declared p does not match row count");
  }
  if (s.p < 1 || s.p > kMaxDim || s.coeffs.size() != (std::uint64_t{1} << s.p))
    fail(ErrorCode::Parse, "spectrum: coefficient count must be 2^p");
  return s;
}

std::string format_certificate(const UniquenessCertificate& c, Format fmt) {
  const std::string ratio = std::to_string(c.max_residual_num) + "/" + std::to_string(c.denominator);
  switch (fmt) {
    case Format::Text:
      return std::string(c.holds ? "UNIQUE-CERTIFIED" : "NOT UNIQUE-CERTIFIED") + ", max residual " + ratio +
             "\np=" + std::to_string(c.p) + " d=" + std::to_string(c.d) + " argmax_point=" +
             std::to_string(c.argmax_point) + " eta_hat=" + format_double(c.eta_hat()) +
             " sign_agrees=" + yes_no(c.sign_agrees) + "\n";
    case Format::Csv:
      return "p,d,holds,max_residual_num,denominator,eta_hat,argmax_point,sign_agrees\n" + std::to_string(c.p) + ',' +
             std::to_string(c.d) + ',' + yes_no(c.holds) + ',' + std::to_string(c.max_residual_num) + ',' +
             std::to_string(c.denominator) + ',' + format_double(c.eta_hat()) + ',' + std::to_string(c.argmax_point) +
             ',' + yes_no(c.sign_agrees) + '\n';
    case Format::Json: {
      ordered_json j = {{"p", c.p},
                        {"d", c.d},
                        {"holds", c.holds},
                        {"max_residual_num", c.max_residual_num},
                        {"denominator", c.denominator},
                        {"eta_hat", c.eta_hat()},
                        {"argmax_point", c.argmax_point},
                        {"sign_agrees", c.sign_agrees}};
      return j.dump() + "\n";
    }
  }
  return {};
}

std::string format_bounds(const BoundsReport& b, Format fmt) {
  const std::pair<const char*, std::string> fields[] = {
      {"p", std::to_string(b.p)},
      {"d", std::to_string(b.d)},
      {"eta", format_double(b.eta)},
      {"omega", format_double(b.omega)},
      {"K_d", std::to_string(b.low_count)},
      {"M_d", std::to_string(b.high_count)},
      {"Md_over_N", format_double(b.residual_variance)},
      {"log_nonuniq_bound", format_double(b.log_nonuniqueness_bound)},
      {"nonuniq_vacuous", yes_no(b.nonuniqueness_vacuous)},
      {"log_uniq_fail_bound", format_double(b.log_uniqueness_failure_bound)},
      {"uniq_fail_vacuous", yes_no(b.uniqueness_failure_vacuous)},
      {"d_lower", format_double(b.d_lower)},
      {"d_upper", format_double(b.d_upper)},
  };
  std::string out;
  switch (fmt) {
    case Format::Text:
      for (const auto& [k, v] : fields) out += std::string(k) + '=' + v + '\n';
      return out;
    case Format::Csv: {
      std::string head, row;
      for (const auto& [k, v] : fields) {
        head += (head.empty() ? "" : ",") + std::string(k);
        row += (row.empty() ? "" : ",") + v;
      }
      return head + '\n' + row + '\n';
    }
    case Format::Json: {
      ordered_json j = {{"p", b.p},
                        {"d", b.d},
                        {"eta", b.eta},
                        {"omega", b.omega},
                        {"K_d", b.low_count},
                        {"M_d", b.high_count},
                        {"Md_over_N", b.residual_variance},
                        {"log_nonuniq_bound", jnum(b.log_nonuniqueness_bound)},
                        {"nonuniq_vacuous", b.nonuniqueness_vacuous},
                        {"log_uniq_fail_bound", jnum(b.log_uniqueness_failure_bound)},
                        {"uniq_fail_vacuous", b.uniqueness_failure_vacuous},
                        {"d_lower", b.d_lower},
                        {"d_upper", b.d_upper}};
      return j.dump() + "\n";
    }
  }
  return out;
}

std::string format_thresholds(int p, double omega, double eta, const Thresholds& t, Format fmt) {
  switch (fmt) {
    case Format::Text:
      return "p=" + std::to_string(p) + "\nomega=" + format_double(omega) + "\neta=" + format_double(eta) +
             "\nd_lower=" + format_double(t.lower) + "\nd_upper=" + format_double(t.upper) + "\n";
    case Format::Csv:
      return "p,omega,eta,d_lower,d_upper\n" + std::to_string(p) + ',' + format_double(omega) + ',' +
             format_double(eta) + ',' + format_double(t.lower) + ',' + format_double(t.upper) + '\n';
    case Format::Json: {
      ordered_json j = {{"p", p}, {"omega", omega}, {"eta", eta}, {"d_lower", t.lower}, {"d_upper", t.upper}};
      return j.dump() + "\n";
    }
  }
  return {};
}

std::string format_witness(int p, int d, const std::optional<CollisionWitness>& w, std::optional<bool> exhaustive,
                           Format fmt) {
  const std::string exh = exhaustive ? yes_no(*exhaustive) : "n/a";
  const std::vector<std::uint64_t> empty;
  const auto& masks = w ? w->flip_set : empty;
  switch (fmt) {
    case Format::Text:
      if (w)
        return "COLLISION FOUND p=" + std::to_string(p) + " d=" + std::to_string(d) + " size=" +
               std::to_string(masks.size()) + " exhaustive=" + exh + "\nflip_set: " + join_masks(masks) + "\n";
      return "NO COLLISION p=" + std::to_string(p) + " d=" + std::to_string(d) + " exhaustive=" + exh + "\n";
    case Format::Csv:
      return "p,d,found,exhaustive,size,flip_set\n" + std::to_string(p) + ',' + std::to_string(d) + ',' +
             yes_no(w.has_value()) + ',' + exh + ',' + std::to_string(masks.size()) + ',' + join_masks(masks) + '\n';
    case Format::Json: {
      ordered_json j = {{"p", p},
                        {"d", d},
                        {"found", w.has_value()},
                        {"exhaustive", exhaustive ? ordered_json(*exhaustive) : ordered_json(nullptr)},
                        {"size", masks.size()},
                        {"flip_set", masks}};
      return j.dump() + "\n";
    }
  }
  return {};
}

std::string format_census(const CensusReport& r, Format fmt) {
  const std::pair<const char*, std::string> fields[] = {
      {"p", std::to_string(r.p)},
      {"d", std::to_string(r.d)},
      {"samples", std::to_string(r.sample_count)},
      {"seed", std::to_string(r.seed)},
      {"distinct_keys", std::to_string(r.distinct_keys)},
      {"collision_pairs", std::to_string(r.collision_pairs.size())},
      {"log_image_bound", format_double(r.log_image_bound)},
  };
  std::string out;
  switch (fmt) {
    case Format::Text:
      for (const auto& [k, v] : fields) out += std::string(k) + '=' + v + '\n';
      return out;
    case Format::Csv: {
      std::string head, row;
      for (const auto& [k, v] : fields) {
        head += (head.empty() ? "" : ",") + std::string(k);
        row += (row.empty() ? "" : ",") + v;
      }
      return head + '\n' + row + '\n';
    }
    case Format::Json: {
      ordered_json j = {{"p", r.p},
                        {"d", r.d},
                        {"samples", r.sample_count},
                        {"seed", r.seed},
                        {"distinct_keys", r.distinct_keys},
                        {"collision_pairs", r.collision_pairs.size()},
                        {"log_image_bound", r.log_image_bound}};
      return j.dump() + "\n";
    }
  }
  return out;
}

std::string format_census_pairs(const CensusReport& r) {
  std::string out;
  for (const auto& [a, b] : r.collision_pairs) out += std::to_string(a) + ',' + std::to_string(b) + '\n';
  return out;
}

std::string format_competitor(int p, int d, const CompetitorResult& r, Format fmt) {
  const bool zero = sgn(r.optimum) == 0;
  switch (fmt) {
    case Format::Text: {
      std::string out = "optimum " + fraction(r.optimum) + "\n" +
                        (zero ? "BOUNDED-UNIQUE" : "BOUNDED COMPETITOR EXISTS") + " p=" + std::to_string(p) +
                        " d=" + std::to_string(d) + " exact_pivots=" + yes_no(r.exact_pivots) + "\n";
      if (r.witness)
        for (std::size_t x = 0; x < r.witness->h.size(); ++x) out += std::to_string(x) + ' ' + fraction(r.witness->h[x]) + '\n';
      return out;
    }
    case Format::Csv: {
      std::string out = "p,d,optimum,exact_pivots,mask,h\n";
      const std::string head = std::to_string(p) + ',' + std::to_string(d) + ',' + fraction(r.optimum) + ',' +
                               yes_no(r.exact_pivots) + ',';
      if (!r.witness) return out + head + ",\n";
      for (std::size_t x = 0; x < r.witness->h.size(); ++x)
        out += head + std::to_string(x) + ',' + fraction(r.witness->h[x]) + '\n';
      return out;
    }
    case Format::Json: {
      ordered_json h = nullptr;
      if (r.witness) {
        h = ordered_json::array();
        for (const auto& v : r.witness->h) h.push_back(fraction(v));
      }
      ordered_json j = {{"p", p},
                        {"d", d},
                        {"optimum", fraction(r.optimum)},
                        {"bounded_unique", zero},
                        {"exact_pivots", r.exact_pivots},
                        {"h", h}};
      return j.dump() + "\n";
    }
  }
  return {};
}

std::string format_sign_certificate(int p, int d, const std::optional<SignCertificate>& c, Format fmt) {
  switch (fmt) {
    case Format::Text: {
      if (!c) return "SIGN CERTIFICATE INFEASIBLE p=" + std::to_string(p) + " d=" + std::to_string(d) + "\n";
      std::string out = "SIGN CERTIFICATE FEASIBLE p=" + std::to_string(p) + " d=" + std::to_string(d) +
                        " margin=" + fraction(c->margin) + "\n";
      for (std::size_t k = 0; k < c->masks.size(); ++k)
        out += std::to_string(c->masks[k]) + ' ' + fraction(c->coeffs[k]) + '\n';
      return out;
    }
    case Format::Csv: {
      std::string out = "p,d,feasible,margin,mask,coeff\n";
      const std::string head = std::to_string(p) + ',' + std::to_string(d) + ',' + yes_no(c.has_value()) + ',' +
                               (c ? fraction(c->margin) : std::string()) + ',';
      if (!c) return out + head + ",\n";
      for (std::size_t k = 0; k < c->masks.size(); ++k)
        out += head + std::to_string(c->masks[k]) + ',' + fraction(c->coeffs[k]) + '\n';
      return out;
    }
    case Format::Json: {
      ordered_json coeffs = nullptr;
      if (c) {
        coeffs = ordered_json::object();
        for (std::size_t k = 0; k < c->masks.size(); ++k) coeffs[std::to_string(c->masks[k])] = fraction(c->coeffs[k]);
      }
      ordered_json j = {{"p", p},
                        {"d", d},
                        {"feasible", c.has_value()},
                        {"margin", c ? ordered_json(fraction(c->margin)) : ordered_json(nullptr)},
                        {"coeffs", coeffs}};
      return j.dump() + "\n";
    }
  }
  return {};
}

}  // namespace lowdeg
