#pragma once

#include <cstdint>
#include <random>

namespace udgo {

// Reproducible random streams.
//
// Every consumer draws from its own stream: the engine for (seed, stream) is
// std::mt19937_64 seeded with splitmix64(splitmix64(seed) ^ stream).  Doubles
// take the top 53 bits of one engine output, so results do not depend on the
// standard library's distribution implementations.
namespace stream {
inline constexpr std::uint64_t instance = 0;
inline constexpr std::uint64_t queries = 1;
inline constexpr std::uint64_t trials_base = std::uint64_t{1} << 32;
}  // namespace stream

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(splitmix64(splitmix64(seed) ^ stream_id)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), bound > 0.  Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    auto m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace udgo
