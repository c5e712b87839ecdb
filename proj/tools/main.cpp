// Copyright 2026 the rkr authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: closed-form probabilities, seeded Monte Carlo,
// Stein-Chen bounds, LLL feasibility, scan statistics, and sequence analysis,
// emitted as JSON (or flattened CSV) reports.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkr/count_distribution.hpp"
#include "rkr/error.hpp"
#include "rkr/estimate.hpp"
#include "rkr/io.hpp"
#include "rkr/lll.hpp"
#include "rkr/montecarlo.hpp"
#include "rkr/oracle.hpp"
#include "rkr/poisson.hpp"
#include "rkr/records.hpp"
#include "rkr/scan.hpp"
#include "rkr/version.hpp"

using nlohmann::json;

namespace {

int exit_code_for(rkr::errc code) {
  switch (code) {
    case rkr::errc::budget_exceeded:
    case rkr::errc::zero_marginal:
    case rkr::errc::zero_conditioning_event:
    case rkr::errc::no_conditioning_hits:
    case rkr::errc::sequence_too_short:
      return 3;  // budget / feasibility
    case rkr::errc::parse_error:
    case rkr::errc::non_positive_value:
      return 4;  // data parse
    default:
      return 2;  // usage
  }
}

std::string iso8601_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- pmf selection -------------------------------------------------------

struct PmfCli {
  std::string file;
  std::string family;
  int M = 0;
  double ratio = 0.5;
};

void add_pmf_options(CLI::App* cmd, PmfCli& p) {
  auto* file =
      cmd->add_option("--pmf", p.file, "Pmf JSON file: {\"probs\": [...]} or a family form");
  auto* family = cmd->add_option("--family", p.family, "Pmf family")
                     ->check(CLI::IsMember({"uniform", "truncated_geometric"}));
  cmd->add_option("--M", p.M, "Family support size")->needs(family);
  cmd->add_option("--ratio", p.ratio, "truncated_geometric mass ratio in (0,1)")->needs(family);
  file->excludes(family);
  family->excludes(file);
}

rkr::Pmf resolve_pmf(const PmfCli& p, json& inputs) {
  if (!p.file.empty()) {
    rkr::Pmf pmf = rkr::load_pmf_file(p.file);
    inputs["pmf_file"] = p.file;
    inputs["pmf"] = rkr::pmf_to_json(pmf);
    return pmf;
  }
  if (p.family.empty())
    rkr::throw_error(rkr::errc::bad_param, "provide a pmf via --pmf or --family");
  if (p.M < 1) rkr::throw_error(rkr::errc::bad_param, "--family requires --M >= 1");
  rkr::Pmf pmf = p.family == "uniform" ? rkr::Pmf::uniform(p.M)
                                       : rkr::Pmf::truncated_geometric(p.M, p.ratio);
  inputs["family"] = p.family;
  inputs["M"] = p.M;
  if (p.family == "truncated_geometric") inputs["ratio"] = p.ratio;
  inputs["pmf"] = rkr::pmf_to_json(pmf);
  return pmf;
}

// ---- output --------------------------------------------------------------

struct OutCli {
  std::string out;
  std::string format = "json";
};

void add_out_options(CLI::App* cmd, OutCli& o) {
  cmd->add_option("--out", o.out, "Write the report to this file instead of stdout");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string scalar_to_string(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

void flatten_json(const json& v, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [key, value] : v.items())
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (v.is_array()) {
    std::size_t index = 0;
    for (const auto& value : v) flatten_json(value, prefix + "." + std::to_string(index++), out);
  } else {
    out.emplace_back(prefix, scalar_to_string(v));
  }
}

// compare emits its rows as a real table; everything else flattens to
// key,value pairs.
std::string report_to_csv(const json& report) {
  std::string text;
  if (report.at("command") == "compare") {
    const json& rows = report.at("results").at("rows");
    static const std::vector<std::string> preferred = {
        "kind",          "k",      "j",           "i0",
        "transition",    "formula", "paper",      "exchangeable",
        "corrected",     "oracle", "abs_diff",    "paper_abs_diff",
        "exchangeable_abs_diff",   "corrected_abs_diff",
        "mc",            "mc_std_error"};
    std::set<std::string> seen;
    for (const auto& row : rows)
      for (const auto& [key, value] : row.items()) seen.insert(key);
    std::vector<std::string> columns;
    for (const auto& name : preferred)
      if (seen.erase(name) > 0) columns.push_back(name);
    columns.insert(columns.end(), seen.begin(), seen.end());
    for (std::size_t c = 0; c < columns.size(); ++c)
      text += (c ? "," : "") + csv_escape(columns[c]);
    text += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) text += ",";
        if (row.contains(columns[c])) text += csv_escape(scalar_to_string(row[columns[c]]));
      }
      text += "\n";
    }
    return text;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  flatten_json(report, "", pairs);
  text = "key,value\n";
  for (const auto& [key, value] : pairs)
    text += csv_escape(key) + "," + csv_escape(value) + "\n";
  return text;
}

json make_report(const std::string& command, json inputs, json results) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)},
              {"timestamp", iso8601_utc_now()},
              {"versions", rkr::version_string}};
}

void emit_report(const json& report, const OutCli& out) {
  const std::string text =
      out.format == "csv" ? report_to_csv(report) : report.dump(2) + "\n";
  if (out.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out.out);
  if (!file) throw std::runtime_error("cannot open output file " + out.out);
  file << text;
}

// ---- shared serialization ------------------------------------------------

json estimate_to_json(const rkr::Estimate& e) {
  return json{{"value", e.value},
              {"std_error", e.std_error},
              {"ci95", json::array({e.ci_low, e.ci_high})},
              {"replications", e.replications}};
}

json count_to_json(const rkr::CountDistribution& d) {
  const long long top = d.max_count();
  std::vector<double> dense(static_cast<std::size_t>(top + 1), 0.0);
  for (const auto& [w, p] : d.masses) dense[static_cast<std::size_t>(w)] = p;
  return json{{"masses", dense},      {"overflow", d.overflow},
              {"lambda", d.lambda},   {"n", d.n},
              {"mean", d.mean()},     {"source", rkr::count_source_name(d.source)}};
}

json target_to_json(const rkr::ScanTarget& t) {
  if (t.is_random) return json{{"type", "random"}};
  return json{{"type", "fixed"}, {"m", t.m}};
}

rkr::ScanTarget parse_target(const std::string& spec) {
  if (spec == "random") return rkr::ScanTarget::random();
  if (spec.rfind("fixed:", 0) == 0) {
    const std::string raw = spec.substr(6);
    std::size_t consumed = 0;
    int m = 0;
    try {
      m = std::stoi(raw, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != raw.size() || raw.empty() || m < 1)
      rkr::throw_error(rkr::errc::bad_param,
                       "--target fixed:<m> requires a positive integer, got \"" + raw + "\"");
    return rkr::ScanTarget::fixed(m);
  }
  rkr::throw_error(rkr::errc::bad_param,
                   "--target must be \"random\" or \"fixed:<m>\", got \"" + spec + "\"");
}

// ---- exact ---------------------------------------------------------------

struct ExactCli {
  PmfCli pmf;
  OutCli out;
  std::string subtarget;
  int k = 1;
  int j = 0;
  int i0 = 0;
  long long n = 0;
  std::string variant = "corrected";
  int j_next = 0;
  bool verify = false;
  CLI::Option* i0_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* j_next_opt = nullptr;
};

void run_exact(const ExactCli& c) {
  json inputs;
  const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
  inputs["subtarget"] = c.subtarget;
  inputs["k"] = c.k;
  inputs["j"] = c.j;
  const std::optional<int> i0 =
      c.i0_opt->count() > 0 ? std::optional<int>(c.i0) : std::nullopt;
  if (i0) inputs["i0"] = *i0;
  if (c.verify) inputs["verify"] = true;
  json results;
  results["subtarget"] = c.subtarget;

  if (c.subtarget == "window") {
    if (!i0) rkr::throw_error(rkr::errc::bad_param, "window requires --i0");
    const double value = rkr::window_event_prob(pmf, {c.k, c.j, i0, std::nullopt});
    results["value"] = value;
    if (c.verify) {
      const double oracle = rkr::exact_event_prob(pmf, c.k, c.j, i0);
      results["oracle"] = oracle;
      results["abs_diff"] = std::abs(value - oracle);
    }
  } else if (c.subtarget == "marginal") {
    const double value = rkr::marginal_prob(pmf, c.k, c.j);
    results["value"] = value;
    if (c.verify) {
      const double oracle = rkr::exact_event_prob(pmf, c.k, c.j, std::nullopt);
      results["oracle"] = oracle;
      results["abs_diff"] = std::abs(value - oracle);
    }
  } else if (c.subtarget == "posterior") {
    const std::vector<double> values = rkr::posterior(pmf, c.k, c.j);
    results["values"] = values;
    if (c.verify) {
      const double marginal = rkr::exact_event_prob(pmf, c.k, c.j, std::nullopt);
      std::vector<double> oracle(values.size());
      double max_diff = 0.0;
      for (int i = 1; i <= pmf.M(); ++i) {
        oracle[i - 1] = rkr::exact_event_prob(pmf, c.k, c.j, i) / marginal;
        max_diff = std::max(max_diff, std::abs(oracle[i - 1] - values[i - 1]));
      }
      results["oracle"] = oracle;
      results["max_abs_diff"] = max_diff;
    }
  } else if (c.subtarget == "prediction") {
    inputs["variant"] = c.variant;
    const auto variant = c.variant == "paper" ? rkr::PredictionVariant::paper
                                              : rkr::PredictionVariant::corrected;
    const double value = rkr::prediction_prob(pmf, c.k, c.j, variant);
    results["variant"] = c.variant;
    results["value"] = value;
    if (c.verify) {
      const double oracle = rkr::exact_conditional_next(pmf, c.k, c.j, c.j);
      results["oracle"] = oracle;
      results["abs_diff"] = std::abs(value - oracle);
    }
  } else if (c.subtarget == "conditional") {
    const int j1 = c.j_next_opt->count() > 0 ? c.j_next : c.j;
    inputs["j_next"] = j1;
    results["j_next"] = j1;
    results["method"] = "oracle";
    results["value"] = rkr::exact_conditional_next(pmf, c.k, j1, c.j);
  } else {  // count-pmf
    if (!i0) rkr::throw_error(rkr::errc::bad_param, "count-pmf requires --i0");
    if (c.n_opt->count() == 0) rkr::throw_error(rkr::errc::bad_param, "count-pmf requires --n");
    inputs["n"] = c.n;
    const rkr::CountDistribution dist = rkr::exact_count_pmf(pmf, *i0, c.k, c.j, c.n);
    results["distribution"] = count_to_json(dist);
    if (c.verify)
      results["mean_lambda_abs_diff"] = std::abs(dist.mean() - dist.lambda);
  }
  emit_report(make_report("exact", std::move(inputs), std::move(results)), c.out);
}

void register_exact(CLI::App& app, ExactCli& c) {
  auto* cmd = app.add_subcommand(
      "exact", "Closed-form record probabilities, optionally checked against enumeration");
  cmd->add_option("subtarget", c.subtarget,
                  "window | marginal | posterior | prediction | conditional | count-pmf")
      ->required()
      ->check(CLI::IsMember(
          {"window", "marginal", "posterior", "prediction", "conditional", "count-pmf"}));
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--k", c.k, "Window length")->required();
  cmd->add_option("--j", c.j, "Record level (conditioning level for conditional)")->required();
  c.i0_opt = cmd->add_option("--i0", c.i0, "Target value (window, count-pmf)");
  c.n_opt = cmd->add_option("--n", c.n, "Number of windows (count-pmf)");
  cmd->add_option("--variant", c.variant, "Prediction variant: corrected | paper")
      ->check(CLI::IsMember({"corrected", "paper"}));
  c.j_next_opt = cmd->add_option("--j-next", c.j_next, "Next level for conditional (default: j)");
  cmd->add_flag("--verify", c.verify, "Add exact-enumeration values and differences");
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_exact(c); });
}

// ---- simulate --------------------------------------------------------------

struct SimulateCli {
  PmfCli pmf;
  OutCli out;
  std::string subtarget = "event";
  int k = 1;
  int j = 0;
  int i0 = 0;
  long long n = 0;
  int j_next = 0;
  std::uint64_t seed = 0;
  long long reps = 100000;
  int workers = 1;
  CLI::Option* i0_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* j_next_opt = nullptr;
};

void run_simulate(const SimulateCli& c) {
  json inputs;
  const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
  inputs["subtarget"] = c.subtarget;
  inputs["k"] = c.k;
  inputs["j"] = c.j;
  inputs["seed"] = c.seed;
  inputs["replications"] = c.reps;
  const rkr::SimConfig cfg{c.seed, c.reps, 0, c.workers};
  json results;
  results["subtarget"] = c.subtarget;
  if (c.subtarget == "event") {
    const std::optional<int> i0 =
        c.i0_opt->count() > 0 ? std::optional<int>(c.i0) : std::nullopt;
    if (i0) inputs["i0"] = *i0;
    results["estimate"] = estimate_to_json(rkr::estimate_event_prob(pmf, c.k, c.j, i0, cfg));
  } else if (c.subtarget == "conditional") {
    const int j1 = c.j_next_opt->count() > 0 ? c.j_next : c.j;
    inputs["j_next"] = j1;
    results["j_next"] = j1;
    results["estimate"] =
        estimate_to_json(rkr::estimate_conditional_next(pmf, c.k, j1, c.j, cfg));
  } else {  // count-pmf
    if (c.i0_opt->count() == 0) rkr::throw_error(rkr::errc::bad_param, "count-pmf requires --i0");
    if (c.n_opt->count() == 0) rkr::throw_error(rkr::errc::bad_param, "count-pmf requires --n");
    inputs["i0"] = c.i0;
    inputs["n"] = c.n;
    results["distribution"] = count_to_json(rkr::estimate_count_pmf(pmf, c.i0, c.k, c.j, c.n, cfg));
  }
  emit_report(make_report("simulate", std::move(inputs), std::move(results)), c.out);
}

void register_simulate(CLI::App& app, SimulateCli& c) {
  auto* cmd = app.add_subcommand("simulate", "Seeded Monte Carlo estimates with Wilson CIs");
  cmd->add_option("subtarget", c.subtarget, "event | conditional | count-pmf")
      ->check(CLI::IsMember({"event", "conditional", "count-pmf"}));
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--k", c.k, "Window length")->required();
  cmd->add_option("--j", c.j, "Record level (conditioning level for conditional)")->required();
  c.i0_opt = cmd->add_option("--i0", c.i0, "Target value");
  c.n_opt = cmd->add_option("--n", c.n, "Number of windows (count-pmf)");
  c.j_next_opt = cmd->add_option("--j-next", c.j_next, "Next level for conditional (default: j)");
  cmd->add_option("--seed", c.seed, "RNG seed")->required();
  cmd->add_option("--reps", c.reps, "Replications")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Worker threads (never changes results)")
      ->check(CLI::PositiveNumber);
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_simulate(c); });
}

// ---- poisson-bound ---------------------------------------------------------

struct PoissonCli {
  PmfCli pmf;
  OutCli out;
  int k = 1;
  int j = 0;
  int i0 = 1;
  long long n = 1;
  std::string variant = "both";
  bool exact_tv = false;
  bool mc_tv = false;
  std::uint64_t seed = 0;
  long long reps = 100000;
  int workers = 1;
  long long w_max = -1;
  CLI::Option* seed_opt = nullptr;
};

void run_poisson(const PoissonCli& c) {
  json inputs;
  const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
  inputs["i0"] = c.i0;
  inputs["k"] = c.k;
  inputs["j"] = c.j;
  inputs["n"] = c.n;
  inputs["variant"] = c.variant;
  const long long w_max = c.w_max >= 0 ? c.w_max : c.n;
  inputs["w_max"] = w_max;
  rkr::BoundReport report = rkr::bound_report(pmf, c.i0, c.k, c.j, c.n);
  json results;
  results["lambda"] = report.lambda;
  results["p"] = report.p;
  results["phi"] = report.phi;
  if (c.variant != "conservative") results["bound_paper"] = report.bound_paper;
  if (c.variant != "paper") results["bound_conservative"] = report.bound_conservative;
  const rkr::CountDistribution poisson = rkr::poisson_pmf(report.lambda, w_max);
  if (c.exact_tv) {
    const rkr::CountDistribution exact = rkr::exact_count_pmf(pmf, c.i0, c.k, c.j, c.n);
    results["tv_exact"] = rkr::tv_distance(exact, poisson);
  }
  if (c.mc_tv) {
    if (c.seed_opt->count() == 0)
      rkr::throw_error(rkr::errc::bad_param, "--mc-tv requires --seed");
    inputs["seed"] = c.seed;
    inputs["replications"] = c.reps;
    const rkr::SimConfig cfg{c.seed, c.reps, 0, c.workers};
    const rkr::CountDistribution empirical =
        rkr::estimate_count_pmf(pmf, c.i0, c.k, c.j, c.n, cfg);
    results["tv_empirical"] = rkr::tv_distance(empirical, poisson);
  }
  emit_report(make_report("poisson-bound", std::move(inputs), std::move(results)), c.out);
}

void register_poisson(CLI::App& app, PoissonCli& c) {
  auto* cmd = app.add_subcommand(
      "poisson-bound", "Stein-Chen Poisson approximation bounds for the event count");
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--i0", c.i0, "Target value")->required();
  cmd->add_option("--k", c.k, "Window length")->required();
  cmd->add_option("--j", c.j, "Record level")->required();
  cmd->add_option("--n", c.n, "Number of windows")->required();
  cmd->add_option("--variant", c.variant, "Bound variant")
      ->check(CLI::IsMember({"both", "paper", "conservative"}));
  cmd->add_flag("--exact-tv", c.exact_tv, "Compute exact TV distance (oracle, budgeted)");
  cmd->add_flag("--mc-tv", c.mc_tv, "Estimate TV distance by simulation (requires --seed)");
  c.seed_opt = cmd->add_option("--seed", c.seed, "RNG seed for --mc-tv");
  cmd->add_option("--reps", c.reps, "Replications for --mc-tv")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--w-max", c.w_max, "Poisson truncation point (default: n)");
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_poisson(c); });
}

// ---- lll-check -------------------------------------------------------------

struct LllCli {
  PmfCli pmf;
  OutCli out;
  int k = 1;
  int j = 0;
  int i0 = 1;
};

void run_lll(const LllCli& c) {
  json inputs;
  const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
  inputs["i0"] = c.i0;
  inputs["k"] = c.k;
  inputs["j"] = c.j;
  const rkr::LllVerdict v = rkr::lll_check(pmf, c.i0, c.k, c.j);
  json results{{"event_prob", v.event_prob},
               {"degree_paper", v.degree_paper},
               {"degree_conservative", v.degree_conservative},
               {"constant_paper", v.constant_paper},
               {"constant_conservative", v.constant_conservative},
               {"condition_paper", v.condition_paper},
               {"condition_conservative", v.condition_conservative},
               {"threshold_paper", v.threshold_paper},
               {"threshold_conservative", v.threshold_conservative}};
  emit_report(make_report("lll-check", std::move(inputs), std::move(results)), c.out);
}

void register_lll(CLI::App& app, LllCli& c) {
  auto* cmd = app.add_subcommand("lll-check", "Lovász Local Lemma feasibility verdict");
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--i0", c.i0, "Target value")->required();
  cmd->add_option("--k", c.k, "Window length")->required();
  cmd->add_option("--j", c.j, "Record level")->required();
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_lll(c); });
}

// ---- scan ------------------------------------------------------------------

struct ScanCli {
  PmfCli pmf;
  OutCli out;
  std::string input;
  std::string target;
  std::string method = "oracle";
  int k = 1;
  long long n = 0;
  int s = 0;
  std::uint64_t seed = 0;
  long long reps = 100000;
  int workers = 1;
  CLI::Option* input_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* s_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void run_scan(const ScanCli& c) {
  json inputs;
  const rkr::ScanTarget target = parse_target(c.target);
  inputs["k"] = c.k;
  inputs["target"] = target_to_json(target);
  json results;
  if (c.input_opt->count() > 0) {
    inputs["input"] = c.input;
    const std::vector<int> sequence = rkr::read_sequence_file(c.input);
    const rkr::ScanResult result = target.is_random
                                       ? rkr::random_target_scan(sequence, c.k)
                                       : rkr::fixed_target_scan(sequence, target.m, c.k);
    results["mode"] = "statistic";
    results["length"] = static_cast<long long>(sequence.size());
    results["statistic"] = result.statistic;
    results["argmax_index"] = result.argmax_index;
  } else {
    const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
    if (c.n_opt->count() == 0 || c.s_opt->count() == 0)
      rkr::throw_error(rkr::errc::bad_param, "tail estimation requires --n and --s");
    inputs["n"] = c.n;
    inputs["s"] = c.s;
    inputs["method"] = c.method;
    results["mode"] = "tail";
    results["method"] = c.method;
    if (c.method == "oracle") {
      results["value"] = rkr::exact_scan_tail(pmf, target, c.k, c.n, c.s);
    } else {
      if (c.seed_opt->count() == 0)
        rkr::throw_error(rkr::errc::bad_param, "--method montecarlo requires --seed");
      inputs["seed"] = c.seed;
      inputs["replications"] = c.reps;
      const rkr::SimConfig cfg{c.seed, c.reps, 0, c.workers};
      results["estimate"] =
          estimate_to_json(rkr::estimate_scan_tail(pmf, target, c.k, c.n, c.s, cfg));
    }
  }
  emit_report(make_report("scan", std::move(inputs), std::move(results)), c.out);
}

void register_scan(CLI::App& app, ScanCli& c) {
  auto* cmd = app.add_subcommand(
      "scan", "Scan statistic of a sequence, or tail probability P(S_k >= s) under a pmf");
  c.input_opt = cmd->add_option("--input", c.input, "Sequence file (CSV or JSONL)");
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--k", c.k, "Window length")->required();
  cmd->add_option("--target", c.target, "random | fixed:<m>")->required();
  c.n_opt = cmd->add_option("--n", c.n, "Sequence length for tail estimation");
  c.s_opt = cmd->add_option("--s", c.s, "Tail threshold s");
  cmd->add_option("--method", c.method, "Tail method")
      ->check(CLI::IsMember({"oracle", "montecarlo"}));
  c.seed_opt = cmd->add_option("--seed", c.seed, "RNG seed (montecarlo)");
  cmd->add_option("--reps", c.reps, "Replications (montecarlo)")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_scan(c); });
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeCli {
  OutCli out;
  std::string input;
  int k = 1;
  int j = 0;
  CLI::Option* j_opt = nullptr;
};

void run_analyze(const AnalyzeCli& c) {
  json inputs;
  inputs["input"] = c.input;
  inputs["k"] = c.k;
  const std::vector<int> sequence = rkr::read_sequence_file(c.input);
  const rkr::EventSeries series = rkr::detect_events(sequence, c.k);
  std::map<int, long long> histogram;
  for (int level = 0; level <= c.k; ++level) histogram[level] = 0;
  for (const auto& [index, level] : series.levels) ++histogram[level];
  json results;
  results["length"] = static_cast<long long>(sequence.size());
  results["k"] = c.k;
  json hist_json, observed;
  const double denom = static_cast<double>(series.levels.size());
  for (const auto& [level, count] : histogram) {
    hist_json[std::to_string(level)] = count;
    observed[std::to_string(level)] = static_cast<double>(count) / denom;
  }
  results["level_histogram"] = hist_json;
  results["observed_fractions"] = observed;
  if (c.j_opt->count() > 0) {
    if (c.j < 0 || c.j > c.k) rkr::throw_error(rkr::errc::bad_param, "--j must lie in 0..k");
    inputs["j"] = c.j;
    json events = json::array();
    for (const auto& [index, level] : series.levels)
      if (level == c.j) events.push_back(index);
    results["events"] = events;
  }
  const rkr::ScanResult scan = rkr::random_target_scan(sequence, c.k);
  results["scan"] = json{{"statistic", scan.statistic}, {"argmax_index", scan.argmax_index}};
  const rkr::Pmf empirical = rkr::empirical_pmf(sequence);
  results["empirical_pmf"] = rkr::pmf_to_json(empirical);
  json marginals;
  for (int level = 0; level <= c.k; ++level)
    marginals[std::to_string(level)] = rkr::marginal_prob(empirical, c.k, level);
  results["model_marginals"] = marginals;
  emit_report(make_report("analyze", std::move(inputs), std::move(results)), c.out);
}

void register_analyze(CLI::App& app, AnalyzeCli& c) {
  auto* cmd = app.add_subcommand(
      "analyze", "Detect record events in a data sequence and fit an empirical pmf");
  cmd->add_option("--input", c.input, "Sequence file (CSV or JSONL)")->required();
  cmd->add_option("--k", c.k, "Window length")->required();
  c.j_opt = cmd->add_option("--j", c.j, "Report indices of level-j events");
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_analyze(c); });
}

// ---- compare ---------------------------------------------------------------

struct CompareCli {
  PmfCli pmf;
  OutCli out;
  int kmax = 2;
  std::uint64_t seed = 0;
  long long reps = 100000;
  int workers = 1;
  CLI::Option* seed_opt = nullptr;
};

void run_compare(const CompareCli& c) {
  json inputs;
  const rkr::Pmf pmf = resolve_pmf(c.pmf, inputs);
  inputs["kmax"] = c.kmax;
  if (c.kmax < 1) rkr::throw_error(rkr::errc::bad_param, "--kmax must be >= 1");
  const bool with_mc = c.seed_opt->count() > 0;
  std::optional<rkr::SimConfig> cfg;
  if (with_mc) {
    inputs["seed"] = c.seed;
    inputs["replications"] = c.reps;
    cfg = rkr::SimConfig{c.seed, c.reps, 0, c.workers};
  }
  json rows = json::array();
  std::map<std::string, double> max_diff;
  auto track = [&max_diff](const std::string& key, double diff) {
    auto [it, inserted] = max_diff.try_emplace(key, diff);
    if (!inserted) it->second = std::max(it->second, diff);
  };
  for (int k = 1; k <= c.kmax; ++k) {
    for (int j = 0; j <= k; ++j) {
      const double marginal = rkr::marginal_prob(pmf, k, j);
      {
        const double oracle = rkr::exact_event_prob(pmf, k, j, std::nullopt);
        json row{{"kind", "marginal"}, {"k", k}, {"j", j},
                 {"formula", marginal}, {"oracle", oracle},
                 {"abs_diff", std::abs(marginal - oracle)}};
        track("marginal", std::abs(marginal - oracle));
        if (with_mc) {
          const rkr::Estimate mc = rkr::estimate_event_prob(pmf, k, j, std::nullopt, *cfg);
          row["mc"] = mc.value;
          row["mc_std_error"] = mc.std_error;
        }
        rows.push_back(std::move(row));
      }
      if (marginal > 0.0) {
        const double oracle = rkr::exact_conditional_next(pmf, k, j, j);
        const double paper = rkr::prediction_prob(pmf, k, j, rkr::PredictionVariant::paper);
        const double corrected =
            rkr::prediction_prob(pmf, k, j, rkr::PredictionVariant::corrected);
        track("prediction_paper", std::abs(paper - oracle));
        track("prediction_corrected", std::abs(corrected - oracle));
        rows.push_back(json{{"kind", "prediction"},
                            {"k", k},
                            {"j", j},
                            {"paper", paper},
                            {"corrected", corrected},
                            {"oracle", oracle},
                            {"paper_abs_diff", std::abs(paper - oracle)},
                            {"corrected_abs_diff", std::abs(corrected - oracle)}});
      }
      for (int i0 = 1; i0 <= pmf.M(); ++i0) {
        const rkr::RecordQuery query{k, j, i0, std::nullopt};
        if (!(rkr::window_event_prob(pmf, query) > 0.0)) continue;
        for (const auto transition : {rkr::Transition::stay_j, rkr::Transition::up_to_j_plus_1}) {
          if (transition == rkr::Transition::up_to_j_plus_1 && j + 1 > k) continue;
          const double paper =
              rkr::successive_prob(pmf, query, transition, rkr::SuccessiveVariant::paper);
          const double exchangeable =
              rkr::successive_prob(pmf, query, transition, rkr::SuccessiveVariant::exchangeable);
          const double oracle = rkr::exact_successive_prob(pmf, i0, k, j, transition);
          track("successive_paper", std::abs(paper - oracle));
          track("successive_exchangeable", std::abs(exchangeable - oracle));
          rows.push_back(
              json{{"kind", "successive"},
                   {"k", k},
                   {"j", j},
                   {"i0", i0},
                   {"transition", transition == rkr::Transition::stay_j ? "stay" : "up"},
                   {"paper", paper},
                   {"exchangeable", exchangeable},
                   {"oracle", oracle},
                   {"paper_abs_diff", std::abs(paper - oracle)},
                   {"exchangeable_abs_diff", std::abs(exchangeable - oracle)}});
        }
      }
    }
  }
  json results;
  results["rows"] = std::move(rows);
  json summary{{"row_count", results["rows"].size()}};
  for (const auto& [key, value] : max_diff) summary["max_abs_diff_" + key] = value;
  results["summary"] = std::move(summary);
  emit_report(make_report("compare", std::move(inputs), std::move(results)), c.out);
}

void register_compare(CLI::App& app, CompareCli& c) {
  auto* cmd = app.add_subcommand(
      "compare", "Formula vs oracle (vs Monte Carlo) discrepancy table over a (k, j) grid");
  add_pmf_options(cmd, c.pmf);
  cmd->add_option("--kmax", c.kmax, "Largest window length in the grid");
  c.seed_opt = cmd->add_option("--seed", c.seed, "RNG seed; enables Monte Carlo columns");
  cmd->add_option("--reps", c.reps, "Replications for the Monte Carlo columns")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_out_options(cmd, c.out);
  cmd->callback([&c] { run_compare(c); });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recent-k-record statistics: exact formulas, enumeration oracle, Monte Carlo, "
               "Poisson approximation bounds, LLL feasibility, and scan statistics"};
  app.require_subcommand(1);
  ExactCli exact_cli;
  SimulateCli simulate_cli;
  PoissonCli poisson_cli;
  LllCli lll_cli;
  ScanCli scan_cli;
  AnalyzeCli analyze_cli;
  CompareCli compare_cli;
  register_exact(app, exact_cli);
  register_simulate(app, simulate_cli);
  register_poisson(app, poisson_cli);
  register_lll(app, lll_cli);
  register_scan(app, scan_cli);
  register_analyze(app, analyze_cli);
  register_compare(app, compare_cli);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const rkr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
