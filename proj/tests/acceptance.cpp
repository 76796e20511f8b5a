// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "lowdeg/collision.hpp"
#include "lowdeg/competitor.hpp"
#include "lowdeg/determinacy.hpp"
#include "lowdeg/experiments.hpp"
#include "lowdeg/random.hpp"
#include "lowdeg/report.hpp"
#include "lowdeg/transform.hpp"

using namespace lowdeg;

namespace {

// Regression constants: |U_d| at p = 3 from full enumeration.
constexpr std::uint64_t kUniqueAtP3[] = {2, 104, 254, 256};

struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

std::vector<std::uint64_t> all_points(std::uint64_t n) {
  std::vector<std::uint64_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void transform_exactness(Outcome& o) {
  for (int p = 1; p <= 16; ++p) {
    const auto n = std::int64_t{1} << p;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto f = sample_function(p, substream_key(0xACCE55, (static_cast<std::uint64_t>(p) << 32) | i));
      auto s = spectrum(f);
      std::int64_t energy = 0;
      for (auto c : s.coeffs) energy += c * c;
      o.expect(energy == n * n, "Parseval at p=" + std::to_string(p));
      auto back = s.coeffs;
      wht(back);
      for (std::uint64_t m = 0; m < f.size(); ++m)
        if (back[m] != n * f.value(m)) {
          o.expect(false, "self-inversion at p=" + std::to_string(p));
          break;
        }
    }
  }
}

void enumeration_p3(Outcome& o) {
  for (int d = 0; d <= 3; ++d) {
    std::uint64_t unique = 0;
    for (std::uint64_t bits = 0; bits < 256; ++bits) {
      auto f = BooleanFunction::from_index(3, bits);
      auto cert = certify_unique(f, d);
      auto exact = collide_exact(f, d);
      o.expect(exact.exhaustive, "exhaustive flag");
      if (!exact.witness) ++unique;
      else o.expect(verify_witness(f, d, exact.witness->flip_set), "witness verifies");
      const auto tag = " (f=" + std::to_string(bits) + ", d=" + std::to_string(d) + ")";
      if (cert.holds) {
        o.expect(!exact.witness, "certified but collision found" + tag);
        o.expect(max_competitor(f, d).optimum == 0, "certified but LP optimum > 0" + tag);
      }
      if (exact.witness) o.expect(!cert.holds, "collision but certified" + tag);
    }
    o.expect(unique == kUniqueAtP3[d], "|U_" + std::to_string(d) + "| = " + std::to_string(unique));
    o.notes.push_back("|U_" + std::to_string(d) + "|=" + std::to_string(unique));
  }
}

void enumeration_p4(Outcome& o) {
  std::uint64_t unique = 0;
  for (std::uint64_t bits = 0; bits < (1u << 16); ++bits) {
    std::vector<std::uint64_t> words{bits};
    auto exact = collide_exact(BooleanFunction::from_words(4, words), 0);
    if (!exact.witness) ++unique;
  }
  const auto k0 = binomial_cumulative(4, 0).low;
  const double image_bound = std::pow(17.0, static_cast<double>(k0));
  o.expect(unique == 2, "|U_0| = " + std::to_string(unique));
  o.expect(static_cast<double>(unique) <= image_bound && image_bound == 17.0, "|U_0| <= (N+1)^K_0 = 17");
  o.notes.push_back("|U_0|=" + std::to_string(unique) + " <= 17");
}

void parity_family(Outcome& o) {
  for (int p = 1; p <= 8; ++p) {
    auto f = BooleanFunction::character(p, (std::uint64_t{1} << p) - 1);
    const auto n = static_cast<std::int64_t>(f.size());
    for (int d = 0; d < p; ++d) {
      const auto tag = " at p=" + std::to_string(p) + ", d=" + std::to_string(d);
      auto cert = certify_unique(f, d);
      o.expect(!cert.holds && cert.max_residual_num == n, "certificate" + tag);
      o.expect(verify_witness(f, d, all_points(f.size())) && f.flipped(all_points(f.size())) == f.negated(),
               "g = -f witness" + tag);
      auto lp = max_competitor(f, d);
      o.expect(lp.optimum == mpq_class(2 * n), "LP optimum" + tag);
      bool h_ok = lp.witness.has_value() && verify_competitor(f, *lp.witness);
      if (h_ok)
        for (std::uint64_t m = 0; m < f.size(); ++m) h_ok = h_ok && lp.witness->h[m] == -2 * f.value(m);
      o.expect(h_ok, "h = -2f" + tag);
    }
  }
}

bool within_bound(const SweepCell& cell) {
  if (cell.log_uniqueness_failure_bound >= 0) return true;
  const double s = *cell.success_rate();
  return 1 - s <= std::exp(cell.log_uniqueness_failure_bound) + 3 * std::sqrt(s * (1 - s) / cell.samples);
}

void finite_bound(Outcome& o) {
  SweepConfig c;
  c.p_list = {16};
  c.d_list = {12, 13, 14};
  c.samples = 1000;
  c.seed = 20240616;
  for (const auto& cell : run_sweep(c)) {
    o.expect(cell.certified == cell.samples, "failures at d=" + std::to_string(cell.d));
    o.expect(cell.log_uniqueness_failure_bound < 0, "non-vacuous bound at d=" + std::to_string(cell.d));
    o.expect(within_bound(cell), "bound at d=" + std::to_string(cell.d));
    o.notes.push_back("d=" + std::to_string(cell.d) + " fail=" + std::to_string(cell.samples - cell.certified) +
                      " log_bound=" + format_double(cell.log_uniqueness_failure_bound));
  }
  SweepConfig all;
  all.p_list = {8, 10, 12};
  all.samples = 1000;
  all.seed = 99;
  std::size_t checked = 0;
  for (const auto& cell : run_sweep(all)) {
    if (cell.log_uniqueness_failure_bound < 0) ++checked;
    o.expect(within_bound(cell), "bound at p=" + std::to_string(cell.p) + ", d=" + std::to_string(cell.d));
  }
  o.notes.push_back(std::to_string(checked) + " more non-vacuous cells checked");
}

void phase_transition(Outcome& o) {
  SweepConfig c;
  c.p_list = {16};
  c.samples = 1000;
  c.seed = 16;
  auto cells = run_sweep(c);
  o.expect(cells.size() == 17, "cell count");
  int first_half = -1;
  std::ostringstream curve;
  for (const auto& cell : cells) {
    const double rate = *cell.success_rate();
    curve << (cell.d ? " " : "") << format_double(rate);
    if (cell.d <= 4) o.expect(rate == 0.0, "rate 0 at d=" + std::to_string(cell.d));
    if (cell.d >= 14) o.expect(rate == 1.0, "rate 1 at d=" + std::to_string(cell.d));
    if (first_half < 0 && rate > 0.5) first_half = cell.d;
    o.expect(within_bound(cell), "bound at d=" + std::to_string(cell.d));
  }
  o.expect(first_half >= 6 && first_half <= 13, "first d with rate > 1/2 is " + std::to_string(first_half));
  o.notes.push_back("rate>1/2 first at d=" + std::to_string(first_half) + "; curve " + curve.str());
}

bool pairs_verify(const CensusReport& r) {
  for (auto [a, b] : r.collision_pairs) {
    auto fa = sample_function(r.p, substream_key(r.seed, a));
    auto fb = sample_function(r.p, substream_key(r.seed, b));
    if (a == b || low_frequency_data(spectrum(fa), r.d) != low_frequency_data(spectrum(fb), r.d)) return false;
  }
  return true;
}

void census(Outcome& o) {
  auto check_one = [&](int p, int d, std::uint64_t samples, std::uint64_t seed) {
    const auto tag = " (" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(samples) +
                     ") seed " + std::to_string(seed);
    auto r = collide_census(p, d, samples, seed, 1);
    o.expect(!r.collision_pairs.empty(), "no pair" + tag);
    o.expect(pairs_verify(r), "pair verification" + tag);
    auto again = collide_census(p, d, samples, seed, 4);
    o.expect(format_census(r, Format::Csv) == format_census(again, Format::Csv) &&
                 format_census_pairs(r) == format_census_pairs(again),
             "byte-identical report" + tag);
    o.notes.push_back(std::to_string(p) + "," + std::to_string(d) + " seed " + std::to_string(seed) + ": " +
                      std::to_string(r.collision_pairs.size()) + " pairs");
  };
  check_one(4, 1, 70000, 1);
  for (std::uint64_t seed : {1, 2, 3}) check_one(8, 0, 2000, seed);
}

void bound_calculators(Outcome& o) {
  for (int p = 1; p <= 30; ++p) {
    // exact lower-tail counts by Pascal's rule
    std::vector<std::uint64_t> row{1};
    for (int k = 1; k <= p; ++k) {
      std::vector<std::uint64_t> next(row.size() + 1, 0);
      for (std::size_t i = 0; i < row.size(); ++i) next[i] += row[i], next[i + 1] += row[i];
      row = next;
    }
    for (int t = 1; t <= p; ++t) {
      const double cut = p / 2.0 - t;
      std::uint64_t count = 0;
      for (int k = 0; k <= p && k <= cut; ++k) count += row[static_cast<std::size_t>(k)];
      const double exact = static_cast<double>(count) / std::ldexp(1.0, p);
      o.expect(hoeffding_tail(p, t) >= exact, "Hoeffding at p=" + std::to_string(p) + ", t=" + std::to_string(t));
    }
  }
  const double upper = thresholds(100, 1.0, 0.5).upper;
  o.expect(std::abs(upper - 69.72) <= 1e-2, "d_upper(100, 0.5) = " + format_double(upper));
  o.notes.push_back("d_upper(100,0.5)=" + format_double(upper));
  for (int p = 1; p <= 24; ++p)
    for (int d = 0; d <= p; ++d)
      for (double eta : {0.1, 0.5, 1.0}) {
        auto b = probability_bounds(p, d, eta);
        o.expect(std::isfinite(b.log_nonuniqueness_bound) &&
                     (std::isfinite(b.log_uniqueness_failure_bound) || (d == p && b.log_uniqueness_failure_bound < 0)),
                 "finite bounds at p=" + std::to_string(p) + ", d=" + std::to_string(d));
      }
}

void determinism(Outcome& o) {
  cli::Sandbox box("lowdeg_acceptance");
  const std::string exe = LOWDEG_CLI;
  auto f = sample_function(10, substream_key(9, 9));
  cli::write_file(box.path("f.wbf"), format_wbf(f));
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"sweep", {"sweep", "--p", "12,16", "--samples", "200", "--seed", "77"}},
      {"sweep-anneal", {"sweep", "--p", "6", "--samples", "50", "--seed", "77", "--anneal"}},
      {"sweep-lp", {"sweep", "--p", "5", "--samples", "50", "--seed", "77", "--lp"}},
      {"sweep-json", {"sweep", "--p", "4", "--samples", "200", "--seed", "77", "--exact-enum", "--format", "json"}},
      {"collide-census", {"collide-census", "--p", "8", "--d", "0", "--samples", "2000", "--seed", "77"}},
      {"collide-anneal",
       {"collide-anneal", "--input", box.path("f.wbf").string(), "--d", "2", "--seed", "77", "--restarts", "8"}},
  };
  for (const auto& [name, args] : commands) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "2", "5"}) {
      const auto out = box.path(name + "." + threads).string();
      auto full = args;
      full.insert(full.end(), {"--threads", threads, "--output", out});
      if (name == "collide-census") full.insert(full.end(), {"--pairs", out + ".pairs"});
      auto r = box.run(exe, full);
      o.expect(r.code == 0, name + " exit " + std::to_string(r.code) + ": " + r.err);
      auto text = cli::read_file(out);
      if (name == "collide-census") text += cli::read_file(out + ".pairs");
      o.expect(!text.empty(), name + " output empty");
      outputs.push_back(text);
    }
    o.expect(outputs[0] == outputs[1] && outputs[1] == outputs[2], name + " differs across --threads");
  }
  o.notes.push_back(std::to_string(commands.size()) + " randomized commands x 3 thread counts");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "transform exactness", 10, transform_exactness},
      {2, "enumeration ground truth at p=3", 60, enumeration_p3},
      {3, "p=4, d=0 enumeration and image bound", 300, enumeration_p4},
      {4, "parity family", 0, parity_family},
      {5, "finite-p uniqueness failure bound", 120, finite_bound},
      {6, "phase transition at p=16", 300, phase_transition},
      {7, "collision census", 0, census},
      {8, "bound calculators", 0, bound_calculators},
      {9, "determinism across thread counts", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds)
      o.failures.push_back("runtime " + std::to_string(secs) + " s over limit");
    const bool pass = o.failures.empty();
    if (!pass) ++failed;
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    for (const auto& f : o.failures) detail += (detail.empty() ? "" : "; ") + std::string("FAILED: ") + f;
    std::printf("criterion %d %s: %s (%.1f s)%s%s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
