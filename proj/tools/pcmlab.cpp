#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "golden.hpp"
#include "pcmlab/config.hpp"
#include "pcmlab/consistency.hpp"
#include "pcmlab/error.hpp"
#include "pcmlab/io.hpp"
#include "pcmlab/perturbation.hpp"
#include "pcmlab/prioritization.hpp"
#include "pcmlab/simulation.hpp"
#include "pcmlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kInputError = 2, kNumericalError = 3 };

constexpr std::uint64_t kDefaultSeed = 1;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = 0;
  std::string scale;
  std::string mode;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("PCMLAB_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno || *end || s[0] == '-') throw pcmlab::ConfigError("PCMLAB_SEED", "expected a non-negative integer");
  return v;
}

class Run {
 public:
  Run(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

  std::string output(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    outputs_.push_back((dir / name).string());
    return outputs_.back();
  }

  void write_manifest(const fs::path& dir, const pcmlab::KeyValueFile& config, std::optional<std::uint64_t> seed) {
    ordered_json j;
    j["command"] = command_;
    j["argv"] = argv_;
    j["version"] = pcmlab::kVersion;
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : config.entries) cfg[k] = v;
    j["config"] = cfg;
    j["seed"] = seed ? ordered_json(*seed) : ordered_json(nullptr);
    j["outputs"] = outputs_;
    j["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << '\n';
    if (!out) throw pcmlab::InputError("cannot write manifest in '" + dir.string() + "'");
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw pcmlab::InputError("cannot write '" + path + "'");
  return out;
}

pcmlab::PairwiseComparisonMatrix load_matrix(const std::string& path, const Common& c) {
  auto m = pcmlab::read_matrix_file(path);
  if (c.mode == "reciprocal") {
    m = pcmlab::enforce_reciprocity(m);
  } else if (c.mode == "arbitrary") {
    m = m.with_mode(pcmlab::Reciprocity::arbitrary);
  }
  if (!c.scale.empty()) {
    const auto region = m.is_reciprocal_mode() ? pcmlab::Region::upper_triangle : pcmlab::Region::off_diagonal;
    const auto mode = m.mode();
    m = pcmlab::round_entries(m, pcmlab::JudgmentScale::parse(c.scale), region).with_mode(mode);
  }
  return m;
}

pcmlab::KeyValueFile matrix_settings(const std::string& file, const Common& c,
                                     std::vector<std::pair<std::string, std::string>> extra) {
  pcmlab::KeyValueFile kv;
  kv.entries.emplace_back("matrix", file);
  if (!c.scale.empty()) kv.entries.emplace_back("scale", c.scale);
  if (!c.mode.empty()) kv.entries.emplace_back("mode", c.mode);
  for (auto& e : extra) kv.entries.push_back(std::move(e));
  return kv;
}

int cmd_prioritize(Run& run, const std::string& file, const std::string& method_text, const Common& c) {
  const auto m = load_matrix(file, c);
  const pcmlab::Method method = pcmlab::parse_method(method_text);
  std::ostringstream text;
  std::optional<double> lambda;
  std::optional<pcmlab::PriorityVector> w;
  if (method == pcmlab::Method::rev) {
    auto r = pcmlab::rev_priority(m);
    lambda = r.lambda_max;
    w = r.vector;
  } else {
    w = pcmlab::prioritize(m, method);
  }
  for (std::size_t i = 0; i < w->size(); ++i) text << (i ? " " : "") << fixed6((*w)[i]);
  text << '\n';
  if (lambda) text << "lambda_max " << fixed6(*lambda) << '\n';
  std::cout << text.str();
  if (!c.out.empty()) {
    auto out = open_out(run.output(c.out, "priority.txt"));
    out << text.str();
    run.write_manifest(c.out, matrix_settings(file, c, {{"method", std::string(pcmlab::method_name(method))}}),
                       std::nullopt);
  }
  return kOk;
}

int cmd_consistency(Run& run, const std::string& file, const std::string& measures_text, const Common& c) {
  const auto m = load_matrix(file, c);
  std::vector<pcmlab::Measure> measures;
  if (measures_text.empty() || measures_text == "all") {
    measures.assign(pcmlab::kAllMeasures.begin(), pcmlab::kAllMeasures.end());
  } else {
    std::stringstream ss(measures_text);
    std::string part;
    while (std::getline(ss, part, ',')) measures.push_back(pcmlab::parse_measure(part));
  }
  std::ostringstream text;
  for (pcmlab::Measure measure : measures) {
    text << pcmlab::measure_name(measure) << ' ';
    if (measure == pcmlab::Measure::k_ti && !m.is_reciprocal_mode()) {
      text << "not defined\n";
      continue;
    }
    text << fixed6(pcmlab::compute_measure(measure, m)) << '\n';
  }
  std::cout << text.str();
  if (!c.out.empty()) {
    auto out = open_out(run.output(c.out, "consistency.txt"));
    out << text.str();
    run.write_manifest(c.out, matrix_settings(file, c, {{"measures", measures_text.empty() ? "all" : measures_text}}),
                       std::nullopt);
  }
  return kOk;
}

pcmlab::KeyValueFile load_experiment_file(const std::string& config_path, const std::string& preset_name) {
  pcmlab::KeyValueFile kv;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw pcmlab::InputError("cannot open config file '" + config_path + "'");
    kv = pcmlab::parse_key_values(in);
  }
  if (!preset_name.empty()) {
    for (const auto& [k, v] : kv.entries) {
      if (k == "preset") throw pcmlab::ConfigError("preset", "given both in the file and on the command line");
    }
    kv.entries.insert(kv.entries.begin(), {"preset", preset_name});
  }
  return kv;
}

void set_or_add(pcmlab::KeyValueFile& kv, const std::string& key, const std::string& value) {
  for (auto& [k, v] : kv.entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  kv.entries.emplace_back(key, value);
}

bool has_key(const pcmlab::KeyValueFile& kv, const std::string& key) {
  for (const auto& [k, v] : kv.entries) {
    if (k == key) return true;
  }
  return false;
}

/// Seed precedence: --seed, then the config's `seed` key, then PCMLAB_SEED, then the default.
pcmlab::ExperimentConfig resolve_experiment(pcmlab::KeyValueFile kv, const std::string& expected, const Common& c) {
  if (!has_key(kv, "experiment") && !has_key(kv, "preset")) kv.entries.emplace_back("experiment", expected);
  if (c.seed) {
    set_or_add(kv, "seed", std::to_string(*c.seed));
  } else if (!has_key(kv, "seed")) {
    set_or_add(kv, "seed", std::to_string(env_seed().value_or(kDefaultSeed)));
  }
  if (!c.scale.empty()) set_or_add(kv, "scale", c.scale);
  if (!c.mode.empty()) {
    if (expected == "sa2") throw pcmlab::ConfigError("mode", "sa2 always enforces reciprocity");
    set_or_add(kv, "reciprocity", c.mode == "reciprocal" ? "forced" : "arbitrary");
  }
  auto config = pcmlab::build_config(kv);
  const bool is_sa1 = std::holds_alternative<pcmlab::Sa1Config>(config);
  if (is_sa1 != (expected == "sa1")) {
    throw pcmlab::ConfigError("experiment", "this configuration is not an " + expected + " experiment");
  }
  return config;
}

std::uint64_t seed_of(const pcmlab::ExperimentConfig& config) {
  return std::visit([](const auto& c) { return c.seed; }, config);
}

int cmd_sa1(Run& run, const std::string& config_path, const std::string& preset_name, const Common& c) {
  const auto config = resolve_experiment(load_experiment_file(config_path, preset_name), "sa1", c);
  const auto& sa1 = std::get<pcmlab::Sa1Config>(config);
  const auto result = pcmlab::run_sa1(sa1, c.workers);
  {
    auto out = open_out(run.output(c.out, "records.csv"));
    pcmlab::write_sa1_records_csv(out, result.records);
  }
  {
    auto out = open_out(run.output(c.out, "summary.csv"));
    pcmlab::write_sa1_summary_csv(out, result.summaries);
  }
  pcmlab::write_sa1_summary_csv(std::cout, result.summaries);
  const auto resolved = pcmlab::to_key_values(config);
  {
    auto out = open_out(run.output(c.out, "config.txt"));
    pcmlab::write_key_values(out, resolved);
  }
  run.write_manifest(c.out, resolved, sa1.seed);
  return kOk;
}

int cmd_sa2(Run& run, const std::string& config_path, const std::string& preset_name, const Common& c) {
  const auto config = resolve_experiment(load_experiment_file(config_path, preset_name), "sa2", c);
  const auto& sa2 = std::get<pcmlab::Sa2Config>(config);
  const auto result = pcmlab::run_sa2(sa2, c.workers);
  {
    auto out = open_out(run.output(c.out, "records.csv"));
    pcmlab::write_sa2_records_csv(out, sa2, result.records);
  }
  const auto resolved = pcmlab::to_key_values(config);
  {
    auto out = open_out(run.output(c.out, "config.txt"));
    pcmlab::write_key_values(out, resolved);
  }
  run.write_manifest(c.out, resolved, sa2.seed);
  std::cout << "records " << result.records.size() << "\nfailures " << result.failures << '\n';
  return kOk;
}

int cmd_report(Run& run, const std::string& records_path, const std::string& measure_text, std::size_t bins,
               const Common& c) {
  std::ifstream in(records_path);
  if (!in) throw pcmlab::InputError("cannot open records file '" + records_path + "'");
  const auto table = pcmlab::read_csv(in);
  const std::string column(pcmlab::measure_name(pcmlab::parse_measure(measure_text)));
  const auto measure = table.numeric_column(column);
  const auto mae = table.numeric_column("mae");
  const auto report = pcmlab::bin_values(measure, mae, bins);

  std::ostringstream scores;
  const std::pair<const char*, pcmlab::QualitySeries> series[] = {
      {"mae_q05", pcmlab::QualitySeries::q05}, {"mae_q10", pcmlab::QualitySeries::q10},
      {"mae_q50", pcmlab::QualitySeries::q50}, {"mae_q90", pcmlab::QualitySeries::q90},
      {"mae_q95", pcmlab::QualitySeries::q95}, {"mean_mae", pcmlab::QualitySeries::mean}};
  for (auto [name, s] : series) {
    scores << "quality_score " << name << ' ' << fixed6(pcmlab::cm_quality_score(report, s)) << '\n';
  }

  if (c.out.empty()) {
    pcmlab::write_report_csv(std::cout, report);
    std::cerr << scores.str();
    return kOk;
  }
  {
    auto out = open_out(run.output(c.out, "report.csv"));
    pcmlab::write_report_csv(out, report);
  }
  {
    auto out = open_out(run.output(c.out, "scores.txt"));
    out << scores.str();
  }
  std::cout << scores.str();
  pcmlab::KeyValueFile kv;
  kv.entries = {{"records", records_path}, {"measure", column}, {"bins", std::to_string(bins)}};
  run.write_manifest(c.out, kv, std::nullopt);
  return kOk;
}

int cmd_validate() {
  const auto checks = pcmlab::tools::golden_checks();
  std::optional<std::string> first_failure;
  for (const auto& check : checks) {
    std::string diag;
    try {
      diag = check.run();
    } catch (const std::exception& e) {
      diag = std::string("threw: ") + e.what();
    }
    if (diag.empty()) {
      std::cout << "PASS " << check.name << '\n';
    } else {
      std::cout << "FAIL " << check.name << ": " << diag << '\n';
      if (!first_failure) first_failure = check.name;
    }
  }
  if (first_failure) {
    std::cerr << "validation failed: " << *first_failure << '\n';
    return kValidationFailed;
  }
  std::cout << checks.size() << " checks passed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise comparison matrix laboratory"};
  app.set_version_flag("--version", pcmlab::kVersion);
  app.require_subcommand(1);

  Common common;
  std::string file;
  std::string method = "llsm";
  std::string measures;
  std::string config_path;
  std::string preset_name;
  std::string measure = "CM_LTI2";
  std::size_t bins = 15;

  auto add_common = [&](CLI::App* sub, bool out_required) {
    sub->add_option("--seed", common.seed, "Random seed (falls back to PCMLAB_SEED)");
    auto* out = sub->add_option("--out", common.out, "Output directory");
    if (out_required) out->required();
    sub->add_option("--workers", common.workers, "Worker threads (0 = all cores)");
    sub->add_option("--scale", common.scale, "Judgment scale: saaty, geometric, numeric:N, continuous");
    sub->add_option("--mode", common.mode, "Reciprocity: reciprocal or arbitrary")
        ->check(CLI::IsMember({"reciprocal", "arbitrary"}));
  };

  auto* prioritize = app.add_subcommand("prioritize", "Estimate a priority vector from a matrix CSV");
  prioritize->add_option("matrix", file, "Matrix CSV file")->required();
  prioritize->add_option("--method", method, "rev, llsm, lua, srdm or sncs");
  add_common(prioritize, false);

  auto* consistency = app.add_subcommand("consistency", "Print consistency measures of a matrix CSV");
  consistency->add_option("matrix", file, "Matrix CSV file")->required();
  consistency->add_option("--measures", measures, "Comma-separated measure names (default all)");
  add_common(consistency, false);

  auto* sa1 = app.add_subcommand("sa1", "Run the hierarchy-level simulation");
  sa1->add_option("config", config_path, "Config file (key = value)");
  sa1->add_option("--preset", preset_name, "Named preset");
  add_common(sa1, true);

  auto* sa2 = app.add_subcommand("sa2", "Run the single-matrix large-error simulation");
  sa2->add_option("config", config_path, "Config file (key = value)");
  sa2->add_option("--preset", preset_name, "Named preset");
  add_common(sa2, true);

  auto* report = app.add_subcommand("report", "Bin simulation records by a measure");
  report->add_option("records", file, "Records CSV from sa2")->required();
  report->add_option("--measure", measure, "Measure column (default CM_LTI2)");
  report->add_option("--bins", bins, "Number of quantile bins")->check(CLI::PositiveNumber);
  add_common(report, false);

  app.add_subcommand("validate", "Run the built-in golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run(sub->get_name(), std::vector<std::string>(argv, argv + argc));
  try {
    if (sub == prioritize) return cmd_prioritize(run, file, method, common);
    if (sub == consistency) return cmd_consistency(run, file, measures, common);
    if ((sub == sa1 || sub == sa2) && config_path.empty() && preset_name.empty()) {
      throw pcmlab::ConfigError("config", "give a config file or --preset");
    }
    if (sub == sa1) return cmd_sa1(run, config_path, preset_name, common);
    if (sub == sa2) return cmd_sa2(run, config_path, preset_name, common);
    if (sub == report) return cmd_report(run, file, measure, bins, common);
    return cmd_validate();
  } catch (const pcmlab::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const pcmlab::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
