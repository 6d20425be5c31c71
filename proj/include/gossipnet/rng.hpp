#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gossipnet {

// mt19937_64 with explicit bit-to-double mappings, so a given seed yields
// the same stream everywhere instead of depending on the standard
// library's distribution internals.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  // exponential waiting time; rate must be positive
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // uniform integer in [0, bound); bound must be positive
  int uniform_int(int bound) {
    const auto wide = static_cast<unsigned __int128>(engine_()) *
                      static_cast<unsigned __int128>(bound);
    return static_cast<int>(wide >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gossipnet
