#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pcmlab::tools {

struct GoldenCheck {
  std::string name;
  /// Returns an empty string on success, otherwise a short diagnostic.
  std::function<std::string()> run;
};

/// Deterministic checks of the worked 4x4 example and the t-statistics.
std::vector<GoldenCheck> golden_checks();

}  // namespace pcmlab::tools
