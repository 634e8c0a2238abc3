#pragma once

// Counter-based generator: every draw is a pure function of (key, counters),
// so parallel trials reproduce bit-for-bit regardless of scheduling.

#include <cstdint>

namespace freelike {

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  // Independent child stream.
  constexpr CounterRng split(std::uint64_t stream) const {
    CounterRng child(0);
    child.key_ = mix(key_ ^ mix(stream + kGolden));
    return child;
  }

  constexpr std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0) const {
    return mix(mix(key_ + a * kGolden) ^ (b * 0xd1b54a32d192ed03ULL + kGolden));
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t a, std::uint64_t b = 0) const {
    return static_cast<double>(bits(a, b) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  constexpr std::uint64_t below(std::uint64_t n, std::uint64_t a, std::uint64_t b = 0) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(a, b)) * n) >> 64);
  }

  // SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
};

}  // namespace freelike
