#pragma once

#include <cstdint>
#include <random>

namespace noonlith {

__extension__ typedef unsigned __int128 uint128;

/// Per-trial generator: std::mt19937_64 seeded through std::seed_seq from
/// (seed, stream). Distinct streams give statistically independent
/// sequences, so trials can run in any order or in parallel.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32), 0x6e6f6f6eu};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n), Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = next();
    uint128 m = static_cast<uint128>(x) * n;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = next();
        m = static_cast<uint128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace noonlith
