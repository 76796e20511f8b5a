// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "lowdeg/lowdeg.h"

namespace {

// Library failure carrying the status it came from.
struct LibraryError {
  ldg_status status;
  std::string message;
};

void check(ldg_status s) {
  if (s != LDG_OK) throw LibraryError{s, ldg_last_error()};
}

struct Usage {
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Function = std::unique_ptr<ldg_function, Deleter<ldg_function, ldg_function_free>>;
using Collision = std::unique_ptr<ldg_collision, Deleter<ldg_collision, ldg_collision_free>>;
using Census = std::unique_ptr<ldg_census, Deleter<ldg_census, ldg_census_free>>;
using Competitor = std::unique_ptr<ldg_competitor, Deleter<ldg_competitor, ldg_competitor_free>>;
using SignCert = std::unique_ptr<ldg_sign_cert, Deleter<ldg_sign_cert, ldg_sign_cert_free>>;
using SweepConfig = std::unique_ptr<ldg_sweep_config, Deleter<ldg_sweep_config, ldg_sweep_config_free>>;
using Sweep = std::unique_ptr<ldg_sweep, Deleter<ldg_sweep, ldg_sweep_free>>;

std::string take(char* s) {
  std::string out(s);
  ldg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LibraryError{LDG_ERR_IO, "cannot open " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LibraryError{LDG_ERR_IO, "cannot write " + path};
  out << text;
}

Function load_function(const std::string& path) {
  ldg_function* f = nullptr;
  check(ldg_function_load(path.c_str(), &f));
  return Function(f);
}

ldg_format to_format(const std::string& name) {
  ldg_format fmt;
  check(ldg_parse_format(name.c_str(), &fmt));
  return fmt;
}

// True if a `key = value` line for `key` appears outside comments.
bool config_sets(const std::string& body, const std::string& key) {
  std::istringstream lines(body);
  for (std::string line; std::getline(lines, line);) {
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto name = line.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t\r") + 1);
    if (name == key) return true;
  }
  return false;
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "text";
  int p = 0;
  int d = 0;
  double eta = 1.0;
  double omega = 1.0;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1000;
  int threads = 1;
  // sweep
  std::string p_list;
  std::string d_list = "all";
  std::string config;
  bool no_certificate = false;
  bool exact_enum = false;
  bool anneal = false;
  bool lp = false;
  // census
  std::string pairs;
  // anneal
  int restarts = 20;
  std::uint64_t max_iters = 0;
  double init_temp = 0;
  double cooling = 0.995;
};

void add_io(CLI::App* cmd, Options& o, bool input_required) {
  auto* in = cmd->add_option("--input", o.input, "input file");
  if (input_required) in->required();
  cmd->add_option("--output", o.output, "output path (default: standard output)");
  cmd->add_option("--format", o.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
}

int run(int argc, char** argv) {
  CLI::App app{"Low-degree Fourier determinacy laboratory for Boolean functions", "lowdeg"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "integer Walsh spectrum S_J of a WBF1 function");
  add_io(spectrum, o, true);

  auto* certify = app.add_subcommand("certify", "sup-norm residual uniqueness certificate");
  add_io(certify, o, true);
  certify->add_option("--d", o.d, "degree cutoff")->required();

  auto* bounds = app.add_subcommand("bounds", "K_d, M_d and both probability bounds");
  add_io(bounds, o, false);
  bounds->remove_option(bounds->get_option("--input"));
  bounds->add_option("--p", o.p, "dimension")->required();
  bounds->add_option("--d", o.d, "degree cutoff")->required();
  bounds->add_option("--eta", o.eta, "residual level in (0, 1]");
  bounds->add_option("--omega", o.omega, "slack added to log p in the lower threshold");

  auto* thresholds = app.add_subcommand("thresholds", "closed-form degree thresholds");
  add_io(thresholds, o, false);
  thresholds->remove_option(thresholds->get_option("--input"));
  thresholds->add_option("--p", o.p, "dimension")->required();
  thresholds->add_option("--eta", o.eta, "residual level in (0, 1)")->required();
  thresholds->add_option("--omega", o.omega, "slack added to log p in the lower threshold");

  auto* sweep = app.add_subcommand("sweep", "seeded Monte Carlo sweep over (p, d)");
  add_io(sweep, o, false);
  sweep->remove_option(sweep->get_option("--input"));
  sweep->add_option("--config", o.config, "flat key=value config file; flags override it");
  sweep->add_option("--p", o.p_list, "comma-separated dimensions");
  sweep->add_option("--d", o.d_list, "comma-separated degrees or 'all'");
  sweep->add_option("--samples", o.samples, "samples per cell");
  sweep->add_option("--eta", o.eta, "residual level for the failure bound, in (0, 1]");
  sweep->add_option("--omega", o.omega, "slack for the lower threshold");
  sweep->add_option("--seed", o.seed, "64-bit seed");
  sweep->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-certificate", o.no_certificate, "skip the residual certificate");
  sweep->add_flag("--exact-enum", o.exact_enum, "exhaustive Boolean collision search (p <= 4)");
  sweep->add_flag("--anneal", o.anneal, "annealing Boolean collision search");
  sweep->add_flag("--lp", o.lp, "bounded-competitor LP (p <= 8)");

  auto* exact = app.add_subcommand("collide-exact", "exhaustive minimal Boolean collision (p <= 4)");
  add_io(exact, o, true);
  exact->add_option("--d", o.d, "degree cutoff")->required();

  auto* census = app.add_subcommand("collide-census", "low-frequency key census of random functions");
  add_io(census, o, false);
  census->remove_option(census->get_option("--input"));
  census->add_option("--p", o.p, "dimension")->required();
  census->add_option("--d", o.d, "degree cutoff")->required();
  census->add_option("--samples", o.samples, "number of sampled functions");
  census->add_option("--seed", o.seed, "64-bit seed");
  census->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  census->add_option("--pairs", o.pairs, "also write the collision pair list here");

  auto* anneal = app.add_subcommand("collide-anneal", "simulated-annealing Boolean collision search");
  add_io(anneal, o, true);
  anneal->add_option("--d", o.d, "degree cutoff")->required();
  anneal->add_option("--seed", o.seed, "64-bit seed");
  anneal->add_option("--restarts", o.restarts, "independent restarts");
  anneal->add_option("--max-iters", o.max_iters, "iterations per restart (0: 50 N)");
  anneal->add_option("--init-temp", o.init_temp, "initial temperature (0: N)");
  anneal->add_option("--cooling", o.cooling, "geometric cooling factor");
  anneal->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* competitor = app.add_subcommand("competitor-lp", "maximal bounded competitor via exact LP (p <= 8)");
  add_io(competitor, o, true);
  competitor->add_option("--d", o.d, "degree cutoff")->required();

  auto* sign = app.add_subcommand("sign-cert", "low-degree sign certificate via LP (p <= 8)");
  add_io(sign, o, true);
  sign->add_option("--d", o.d, "degree cutoff")->required();

  auto* plot = app.add_subcommand("plot", "SVG chart of a sweep CSV");
  plot->add_option("--input", o.input, "sweep CSV")->required();
  plot->add_option("--output", o.output, "SVG path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw Usage{e.what()};
  }

  auto need_seed = [&] {
    if (!o.seed) throw Usage{"--seed is required for randomized subcommands"};
    return *o.seed;
  };

  char* text = nullptr;
  if (*spectrum) {
    auto f = load_function(o.input);
    check(ldg_spectrum_report(f.get(), to_format(o.format), &text));
  } else if (*certify) {
    auto f = load_function(o.input);
    check(ldg_certificate_report(f.get(), o.d, to_format(o.format), &text));
  } else if (*bounds) {
    check(ldg_bounds_report(o.p, o.d, o.eta, o.omega, to_format(o.format), &text));
  } else if (*thresholds) {
    check(ldg_thresholds_report(o.p, o.omega, o.eta, to_format(o.format), &text));
  } else if (*sweep) {
    ldg_sweep_config* raw = nullptr;
    check(ldg_sweep_config_new(&raw));
    SweepConfig cfg(raw);
    bool have_seed = false, have_p = false;
    if (!o.config.empty()) {
      const auto body = read_file(o.config);
      check(ldg_sweep_config_parse(cfg.get(), body.data(), body.size()));
      have_seed = config_sets(body, "seed");
      have_p = config_sets(body, "p_list");
    }
    auto set = [&](const char* key, const std::string& value) { check(ldg_sweep_config_set(cfg.get(), key, value.c_str())); };
    auto given = [&](const char* flag) { return sweep->count(flag) > 0; };
    if (given("--p")) set("p_list", o.p_list);
    else if (!have_p) throw Usage{"sweep: --p (or p_list in --config) is required"};
    if (given("--d") || o.config.empty()) set("d_list", o.d_list);
    if (given("--samples") || o.config.empty()) set("samples", std::to_string(o.samples));
    if (given("--eta") || o.config.empty()) set("eta", std::to_string(o.eta));
    if (given("--omega") || o.config.empty()) set("omega", std::to_string(o.omega));
    if (given("--seed")) set("seed", std::to_string(*o.seed));
    else if (!have_seed) need_seed();
    if (given("--threads")) set("threads", std::to_string(o.threads));
    if (given("--no-certificate")) set("run_certificate", "0");
    if (given("--exact-enum")) set("run_exact_enum", "1");
    if (given("--anneal")) set("run_anneal", "1");
    if (given("--lp")) set("run_lp", "1");
    ldg_sweep* s = nullptr;
    check(ldg_run_sweep(cfg.get(), &s));
    Sweep result(s);
    const auto fmt = to_format(o.format);
    check(ldg_sweep_report(result.get(), fmt == LDG_FORMAT_JSON ? LDG_FORMAT_JSON : LDG_FORMAT_CSV, &text));
  } else if (*exact) {
    auto f = load_function(o.input);
    ldg_collision* c = nullptr;
    check(ldg_collide_exact(f.get(), o.d, &c));
    Collision hold(c);
    check(ldg_collision_report(c, to_format(o.format), &text));
  } else if (*census) {
    const auto seed = need_seed();
    ldg_census* c = nullptr;
    check(ldg_collide_census(o.p, o.d, o.samples, seed, o.threads, &c));
    Census hold(c);
    if (!o.pairs.empty()) {
      char* pairs = nullptr;
      check(ldg_census_pairs_text(c, &pairs));
      write_output(o.pairs, take(pairs));
    }
    check(ldg_census_report(c, to_format(o.format), &text));
  } else if (*anneal) {
    const auto seed = need_seed();
    auto f = load_function(o.input);
    ldg_anneal_params params;
    ldg_anneal_params_default(&params);
    params.restarts = o.restarts;
    params.max_iters = o.max_iters;
    params.init_temp = o.init_temp;
    params.cooling = o.cooling;
    params.seed = seed;
    ldg_collision* c = nullptr;
    check(ldg_collide_anneal(f.get(), o.d, &params, o.threads, &c));
    Collision hold(c);
    check(ldg_collision_report(c, to_format(o.format), &text));
  } else if (*competitor) {
    auto f = load_function(o.input);
    ldg_competitor* c = nullptr;
    check(ldg_max_competitor(f.get(), o.d, &c));
    Competitor hold(c);
    check(ldg_competitor_report(c, to_format(o.format), &text));
  } else if (*sign) {
    auto f = load_function(o.input);
    ldg_sign_cert* c = nullptr;
    check(ldg_sign_certificate(f.get(), o.d, &c));
    SignCert hold(c);
    check(ldg_sign_cert_report(c, to_format(o.format), &text));
  } else if (*plot) {
    const auto csv = read_file(o.input);
    check(ldg_plot_svg(csv.data(), csv.size(), &text));
  }
  write_output(o.output, take(text));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n";
    return 2;
  } catch (const LibraryError& e) {
    std::cerr << "error: " << e.message << "\n";
    switch (e.status) {
      case LDG_ERR_INVALID_ARGUMENT:
      case LDG_ERR_PARSE:
      case LDG_ERR_IO:
      case LDG_ERR_LIMIT:
        return 2;
      default:
        return 1;
    }
  }
}
