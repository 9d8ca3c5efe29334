#include "pcmlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "pcmlab/error.hpp"
#include "pcmlab/io.hpp"

namespace pcmlab {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& field, std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "inf" || t == "+inf") return PerturbationModel::kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& field, std::string_view text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::size_t to_size(const std::string& field, std::string_view text) {
  return static_cast<std::size_t>(to_u64(field, text));
}

int to_int(const std::string& field, std::string_view text) {
  const std::uint64_t v = to_u64(field, text);
  if (v > 1'000'000'000) throw ConfigError(field, "value too large");
  return static_cast<int>(v);
}

template <class F>
auto rethrow_as(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(field, e.what());
  }
}

JudgmentScale to_scale(const std::string& field, std::string_view text) {
  return rethrow_as(field, [&] { return JudgmentScale::parse(trim(text)); });
}

ReciprocityPolicy to_reciprocity(const std::string& field, std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "forced" || t == "fr-pcm" || t == "frpcm" || t == "reciprocal") return ReciprocityPolicy::forced;
  if (t == "arbitrary" || t == "apcm") return ReciprocityPolicy::arbitrary;
  throw ConfigError(field, "expected forced or arbitrary, got '" + std::string(text) + "'");
}

std::vector<Method> to_methods(const std::string& field, std::string_view text) {
  if (lower(trim(text)) == "all") return {kAllMethods.begin(), kAllMethods.end()};
  std::vector<Method> out;
  for (const auto& part : split(text, ',')) {
    out.push_back(rethrow_as(field, [&] { return parse_method(part); }));
  }
  return out;
}

std::vector<Measure> to_measures(const std::string& field, std::string_view text) {
  if (lower(trim(text)) == "all") return {kAllMeasures.begin(), kAllMeasures.end()};
  std::vector<Measure> out;
  for (const auto& part : split(text, ',')) {
    out.push_back(rethrow_as(field, [&] { return parse_measure(part); }));
  }
  return out;
}

void apply_optimizer(OptimizerSettings& opt, const std::string& key, const std::string& value) {
  if (key == "optimizer.tolerance") {
    opt.objective_tolerance = to_double(key, value);
  } else if (key == "optimizer.max_iterations") {
    opt.max_iterations = to_int(key, value);
  } else {
    opt.restarts = to_int(key, value);
  }
}

bool is_optimizer_key(const std::string& key) {
  return key == "optimizer.tolerance" || key == "optimizer.max_iterations" || key == "optimizer.restarts";
}

void apply_sa1(Sa1Config& c, const std::string& key, const std::string& value) {
  if (key == "criteria_min") {
    c.criteria_min = to_size(key, value);
  } else if (key == "criteria_max") {
    c.criteria_max = to_size(key, value);
  } else if (key == "alternatives_min") {
    c.alternatives_min = to_size(key, value);
  } else if (key == "alternatives_max") {
    c.alternatives_max = to_size(key, value);
  } else if (key == "scale") {
    c.scale = to_scale(key, value);
  } else if (key == "reciprocity") {
    c.reciprocity = to_reciprocity(key, value);
  } else if (key == "methods") {
    c.methods = to_methods(key, value);
  } else if (key == "perturbation") {
    c.perturbation = rethrow_as(key, [&] { return parse_perturbation(value); });
  } else if (key == "chi") {
    c.repetitions = to_size(key, value);
  } else if (key == "gamma") {
    c.models = to_size(key, value);
  } else if (key == "seed") {
    c.seed = to_u64(key, value);
  } else if (is_optimizer_key(key)) {
    apply_optimizer(c.optimizer, key, value);
  } else {
    throw ConfigError(key, "unknown key for sa1");
  }
}

void apply_sa2(Sa2Config& c, const std::string& key, const std::string& value) {
  if (key == "n") {
    c.n = to_size(key, value);
  } else if (key == "scale") {
    c.scales.clear();
    for (const auto& part : split(value, ',')) c.scales.push_back(to_scale(key, part));
  } else if (key == "method") {
    c.method = rethrow_as(key, [&] { return parse_method(trim(value)); });
  } else if (key == "measures") {
    c.measures = to_measures(key, value);
  } else if (key == "nn") {
    c.perturbations = to_size(key, value);
  } else if (key == "nm") {
    c.base_vectors = to_size(key, value);
  } else if (key == "large_error") {
    const auto parts = split(value, ':');
    if (parts.size() != 2) throw ConfigError(key, "expected LOWER:UPPER");
    c.large_lower = to_double(key, parts[0]);
    c.large_upper = to_double(key, parts[1]);
  } else if (key == "small_error") {
    if (lower(trim(value)) == "default") {
      c.small_errors = Sa2Config::default_small_errors();
    } else {
      c.small_errors.clear();
      for (const auto& part : split(value, ',')) {
        c.small_errors.push_back(rethrow_as(key, [&] { return parse_perturbation(part); }));
      }
    }
  } else if (key == "seed") {
    c.seed = to_u64(key, value);
  } else if (is_optimizer_key(key)) {
    apply_optimizer(c.optimizer, key, value);
  } else {
    throw ConfigError(key, "unknown key for sa2");
  }
}

}  // namespace

KeyValueFile parse_key_values(std::istream& in) {
  KeyValueFile file;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = lower(trim(std::string_view(t).substr(0, eq)));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    if (!seen.insert(key).second) throw ConfigError(key, "repeated key");
    file.entries.emplace_back(std::move(key), std::move(value));
  }
  return file;
}

PerturbationModel parse_perturbation(std::string_view text) {
  std::string t = lower(trim(text));
  bool shared = false;
  if (const std::size_t slash = t.find('/'); slash != std::string::npos) {
    const std::string mode = trim(std::string_view(t).substr(slash + 1));
    if (mode == "shared") {
      shared = true;
    } else if (mode != "per-entry") {
      throw ConfigError("perturbation", "unknown draw mode '" + mode + "'");
    }
    t = trim(std::string_view(t).substr(0, slash));
  }
  const auto parts = split(t, ':');
  const std::string& kind = parts[0];
  auto num = [&](std::size_t i) { return to_double("perturbation", parts[i]); };
  auto need = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw ConfigError("perturbation", kind + " takes " + std::to_string(count) + " parameters");
    }
  };
  PerturbationModel model = PerturbationModel::constant(1.0);
  rethrow_as("perturbation", [&] {
    if (kind == "uniform") {
      need(2);
      model = PerturbationModel::uniform(num(1), num(2));
    } else if (kind == "constant") {
      need(1);
      model = PerturbationModel::constant(num(1));
    } else if (kind == "gamma") {
      need(3);
      model = PerturbationModel::gamma(num(1), num(2), num(3));
    } else if (kind == "lognormal") {
      need(3);
      model = PerturbationModel::lognormal(num(1), num(2), num(3));
    } else if (kind == "tnormal" || kind == "truncated-normal") {
      need(3);
      model = PerturbationModel::truncated_normal(num(1), num(2), num(3));
    } else if (kind == "fisher" || kind == "fisher-snedecor") {
      if (parts.size() == 3) {
        model = PerturbationModel::fisher_snedecor(num(1), num(2));
      } else {
        need(4);
        model = PerturbationModel::fisher_snedecor(num(1), num(2), num(3), num(4));
      }
    } else {
      throw ConfigError("perturbation", "unknown distribution '" + kind + "'");
    }
    return 0;
  });
  return shared ? model.with_draw_mode(PerturbationModel::DrawMode::shared) : model;
}

std::string format_perturbation(const PerturbationModel& m) {
  using D = PerturbationModel::Distribution;
  const std::string a = format_number(m.lower());
  const std::string b = format_number(m.upper());
  std::string s;
  if (m.is_constant()) {
    s = "constant:" + a;
  } else {
    switch (m.distribution()) {
      case D::uniform: s = "uniform:" + a + ":" + b; break;
      case D::gamma: s = "gamma:" + format_number(m.shape()) + ":" + a + ":" + b; break;
      case D::lognormal: s = "lognormal:" + format_number(m.shape()) + ":" + a + ":" + b; break;
      case D::truncated_normal: s = "tnormal:" + format_number(m.shape()) + ":" + a + ":" + b; break;
      case D::fisher_snedecor:
        s = "fisher:" + format_number(m.shape()) + ":" + format_number(m.shape2()) + ":" + a + ":" + b;
        break;
    }
  }
  if (m.draw_mode() == PerturbationModel::DrawMode::shared) s += "/shared";
  return s;
}

std::vector<std::string> preset_names() {
  return {"table2-gamma", "table2-uniform", "table3-fsnedecor", "table8-default"};
}

ExperimentConfig preset(std::string_view name) {
  const std::string n = lower(trim(name));
  if (n == "table2-gamma" || n == "table2-uniform") {
    Sa1Config c;
    c.scale = JudgmentScale::geometric();
    c.reciprocity = ReciprocityPolicy::forced;
    c.repetitions = 15;
    c.models = 2000;
    c.perturbation = n == "table2-gamma" ? PerturbationModel::gamma(kTable2GammaShape, 0.01, 1.99)
                                         : PerturbationModel::uniform(0.01, 1.99);
    return c;
  }
  if (n == "table3-fsnedecor") {
    Sa1Config c;
    c.criteria_min = 3;
    c.criteria_max = 7;
    c.alternatives_min = 3;
    c.alternatives_max = 7;
    c.scale = JudgmentScale::geometric();
    c.reciprocity = ReciprocityPolicy::forced;
    c.repetitions = 100;
    c.models = 1000;
    c.perturbation = PerturbationModel::fisher_snedecor(14.0, 40.0);
    return c;
  }
  if (n == "table8-default") {
    Sa2Config c;
    c.n = 4;
    c.scales = {JudgmentScale::saaty()};
    c.method = Method::llsm;
    c.perturbations = 20;
    c.base_vectors = 500;
    return c;
  }
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

ExperimentConfig build_config(const KeyValueFile& file) {
  std::string experiment;
  std::string preset_name;
  for (const auto& [key, value] : file.entries) {
    if (key == "experiment") experiment = lower(value);
    if (key == "preset") preset_name = value;
  }
  ExperimentConfig config = Sa1Config{};
  if (!preset_name.empty()) {
    config = preset(preset_name);
    const std::string kind = std::holds_alternative<Sa1Config>(config) ? "sa1" : "sa2";
    if (!experiment.empty() && experiment != kind) {
      throw ConfigError("experiment", "preset '" + preset_name + "' is an " + kind + " preset");
    }
  } else if (experiment == "sa2") {
    config = Sa2Config{};
  } else if (!experiment.empty() && experiment != "sa1") {
    throw ConfigError("experiment", "expected sa1 or sa2, got '" + experiment + "'");
  } else if (experiment.empty()) {
    throw ConfigError("experiment", "missing; set experiment = sa1|sa2 or a preset");
  }
  for (const auto& [key, value] : file.entries) {
    if (key == "experiment" || key == "preset") continue;
    if (auto* c1 = std::get_if<Sa1Config>(&config)) {
      apply_sa1(*c1, key, value);
    } else {
      apply_sa2(std::get<Sa2Config>(config), key, value);
    }
  }
  std::visit([](const auto& c) { c.validate(); }, config);
  return config;
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  return build_config(parse_key_values(in));
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s;
}

void add_optimizer(KeyValueFile& f, const OptimizerSettings& o) {
  f.entries.emplace_back("optimizer.tolerance", format_number(o.objective_tolerance));
  f.entries.emplace_back("optimizer.max_iterations", std::to_string(o.max_iterations));
  f.entries.emplace_back("optimizer.restarts", std::to_string(o.restarts));
}

}  // namespace

KeyValueFile to_key_values(const ExperimentConfig& config) {
  KeyValueFile f;
  if (const auto* c = std::get_if<Sa1Config>(&config)) {
    std::vector<std::string> methods;
    for (Method m : c->methods) methods.emplace_back(method_name(m));
    f.entries = {{"experiment", "sa1"},
                 {"criteria_min", std::to_string(c->criteria_min)},
                 {"criteria_max", std::to_string(c->criteria_max)},
                 {"alternatives_min", std::to_string(c->alternatives_min)},
                 {"alternatives_max", std::to_string(c->alternatives_max)},
                 {"scale", c->scale.name()},
                 {"reciprocity", c->reciprocity == ReciprocityPolicy::forced ? "forced" : "arbitrary"},
                 {"methods", join(methods)},
                 {"perturbation", format_perturbation(c->perturbation)},
                 {"chi", std::to_string(c->repetitions)},
                 {"gamma", std::to_string(c->models)},
                 {"seed", std::to_string(c->seed)}};
    add_optimizer(f, c->optimizer);
  } else {
    const auto& s2 = std::get<Sa2Config>(config);
    std::vector<std::string> scales;
    for (const auto& s : s2.scales) scales.push_back(s.name());
    std::vector<std::string> measures;
    for (Measure m : s2.measures) measures.emplace_back(measure_name(m));
    std::vector<std::string> small;
    for (const auto& m : s2.small_errors) small.push_back(format_perturbation(m));
    f.entries = {{"experiment", "sa2"},
                 {"n", std::to_string(s2.n)},
                 {"scale", join(scales)},
                 {"method", std::string(method_name(s2.method))},
                 {"measures", join(measures)},
                 {"nn", std::to_string(s2.perturbations)},
                 {"nm", std::to_string(s2.base_vectors)},
                 {"large_error", format_number(s2.large_lower) + ":" + format_number(s2.large_upper)},
                 {"small_error", join(small)},
                 {"seed", std::to_string(s2.seed)}};
    add_optimizer(f, s2.optimizer);
  }
  return f;
}

void write_key_values(std::ostream& out, const KeyValueFile& file) {
  for (const auto& [key, value] : file.entries) out << key << " = " << value << '\n';
}

}  // namespace pcmlab
