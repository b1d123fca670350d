#pragma once

#include <cstdint>
#include <random>

namespace projinv::detail {

/// mt19937_64 with a fixed uniform mapping; std distributions are not
/// reproducible across standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [-1, 1).
  double symmetric() {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 step, used to derive per-trial seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace projinv::detail
