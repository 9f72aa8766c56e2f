#pragma once

#include <cstdint>
#include <random>

namespace tfd {

/// Seed for every stochastic component. Same seed and input give the same
/// output on every platform.
struct RandomSeed {
  std::uint64_t value = 0;
};

/// SplitMix64 finalizer, used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Portable generator: std::mt19937_64 (fully specified by the standard) with
/// hand-written uniform and Box-Muller normal transforms, because the standard
/// distribution classes are implementation-defined.
///
/// Substreams: Rng(seed, stream) seeds the engine with splitmix64(seed ^
/// splitmix64(stream)), so components that draw from different stream ids
/// never share state and adding draws to one does not shift the others.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream ids used across the library.
namespace streams {
inline constexpr std::uint64_t synthetic_core = 1;
inline constexpr std::uint64_t synthetic_factor = 2;
inline constexpr std::uint64_t synthetic_noise = 3;
inline constexpr std::uint64_t synthetic_decay = 4;
inline constexpr std::uint64_t extreme_base = 5;
inline constexpr std::uint64_t extreme_noise = 6;
inline constexpr std::uint64_t srtsvd = 7;
inline constexpr std::uint64_t normsamp = 8;
inline constexpr std::uint64_t kmeans = 9;
inline constexpr std::uint64_t scenes = 10;
}  // namespace streams

}  // namespace tfd
