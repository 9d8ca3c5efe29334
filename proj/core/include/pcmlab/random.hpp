#pragma once

#include <cstdint>
#include <random>

namespace pcmlab {

using Rng = std::mt19937_64;

/// Independent generator for work unit `unit` of stream `stream` under `seed`.
/// Results depend only on the three numbers, never on scheduling.
Rng make_substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t unit);

}  // namespace pcmlab
