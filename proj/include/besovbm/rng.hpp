#pragma once

#include <cstdint>
#include <random>

namespace besovbm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed plus substream index. Identical (seed, stream) pairs reproduce the
/// same draws bit for bit; work items get disjoint streams via substream().
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  [[nodiscard]] RngSeed substream(std::uint64_t index) const {
    return {seed, splitmix64(stream ^ splitmix64(index + 0xD1B54A32D192ED03ULL))};
  }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

using Engine = std::mt19937_64;

inline Engine make_engine(RngSeed s) {
  return Engine{splitmix64(s.seed ^ splitmix64(s.stream))};
}

} // namespace besovbm
