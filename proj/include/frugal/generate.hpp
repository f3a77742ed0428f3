#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frugal/io.hpp"

namespace frugal {

// splitmix64 (Steele, Lea, Flood 2014). Streams are fixed by the seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] by rejection, so the result is unbiased.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = -span % span;
    std::uint64_t x = next();
    while (x < limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

  bool chance(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

using GeneratorParams = std::map<std::string, std::string>;

// Kinds: layered-dag, parallel-paths, random-gnp-cover, star, clique,
// multipartite, r-out-of-k. Unknown kinds and malformed parameters raise
// ValidationError. The same (kind, params, seed) always yields the same
// instance.
Instance generate(const std::string& kind, const GeneratorParams& params,
                  std::uint64_t seed);

const std::vector<std::string>& generator_kinds();

// Seed for the i-th instance of a sweep started from `seed`.
std::uint64_t sweep_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace frugal
