#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pcmlab/simulation.hpp"

namespace pcmlab {

/// Flat `key = value` text. '#' starts a comment; blank lines are ignored.
/// Keys keep their order; a repeated key is rejected.
struct KeyValueFile {
  std::vector<std::pair<std::string, std::string>> entries;
};

KeyValueFile parse_key_values(std::istream& in);

/// Distribution literals:
///   uniform:A:B  constant:V  gamma:SHAPE:A:B  lognormal:SIGMA:A:B
///   tnormal:SIGMA:A:B  fisher:D1:D2[:A:B]
/// with an optional "/shared" suffix. Bounds accept "inf".
PerturbationModel parse_perturbation(std::string_view text);
std::string format_perturbation(const PerturbationModel& model);

/// Gamma shape of the table2-gamma preset (mean 1 after truncation to [0.01, 1.99]).
inline constexpr double kTable2GammaShape = 1.5;

using ExperimentConfig = std::variant<Sa1Config, Sa2Config>;

/// Names accepted by `preset = ...`.
std::vector<std::string> preset_names();
ExperimentConfig preset(std::string_view name);

/// Builds a config from `experiment = sa1|sa2` and/or `preset = NAME`,
/// then applies the remaining keys. Errors are ConfigError naming the key.
ExperimentConfig build_config(const KeyValueFile& file);
ExperimentConfig read_config_file(const std::string& path);

/// Canonical key/value form; feeding it back through build_config yields the same config.
KeyValueFile to_key_values(const ExperimentConfig& config);
void write_key_values(std::ostream& out, const KeyValueFile& file);

}  // namespace pcmlab
