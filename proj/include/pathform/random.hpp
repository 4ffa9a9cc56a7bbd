#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pathform {

// Identifies one reproducible random substream.
struct StreamConfig {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
};

// Seeded 64-bit Mersenne Twister with portable variate transforms. The
// engine and std::seed_seq are fully specified by the standard, and all
// conversions below are written out, so draw sequences are identical on
// every conforming platform.
class RandomStream {
 public:
  explicit RandomStream(StreamConfig cfg, std::uint64_t block = 0) {
    std::seed_seq seq{lo(cfg.seed), hi(cfg.seed), lo(cfg.stream_index),
                      hi(cfg.stream_index), lo(block), hi(block)};
    engine_.seed(seq);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_upper() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform_open(); }

  // Unit-mean exponential; strictly positive.
  double exponential() { return -std::log(uniform_open()); }

  // Standard normal via Box-Muller (one variate per call, no cached state).
  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    return r * std::cos(2.0 * std::numbers::pi * uniform_open());
  }

 private:
  static std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

  std::mt19937_64 engine_;
};

}  // namespace pathform
