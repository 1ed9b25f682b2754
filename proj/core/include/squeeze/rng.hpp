#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace squeeze {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw of stream (seed, stream_id) is a pure
/// function of (seed, stream_id, i), so trajectories can be generated in any order
/// or on any worker and still reproduce bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id)
      : key_(splitmix64(splitmix64(seed) ^ (stream_id * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL))) {}

  std::uint64_t next() {
    std::uint64_t z = key_ + (counter_++) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    // second round decorrelates neighbouring counters of nearby keys
    z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ULL;
    return z ^ (z >> 32);
  }

  /// Uniform on (0, 1].
  double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
    const double a = 6.283185307179586476925 * uniform_open0();
    return {r * std::cos(a), r * std::sin(a)};
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace squeeze
