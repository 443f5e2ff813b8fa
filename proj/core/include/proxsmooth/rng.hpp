#pragma once

#include <cstdint>

namespace proxsmooth {

// Counter-based 64-bit generator (splitmix64 finalizer over an incrementing
// counter keyed by seed and stream). Each (seed, stream) pair is an
// independent deterministic stream; there is no global state, so adding a
// consumer never perturbs draws made elsewhere. Gaussians use Box-Muller on
// top of 53-bit uniforms to keep the output identical across platforms and
// standard libraries.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double next_double();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal (Box-Muller; second half of each pair is cached).
  double next_gaussian();

  /// Uniform integer in [0, n), n >= 1.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

// Stream identifiers used by the instance generators. Fixed values are part
// of the reproducibility contract: results for a given seed never change when
// new streams are appended.
namespace streams {
inline constexpr std::uint64_t kDispersionPoints = 1;
inline constexpr std::uint64_t kDispersionInit = 2;
inline constexpr std::uint64_t kSubspaceProjector = 3;
inline constexpr std::uint64_t kMimoSymbols = 4;
inline constexpr std::uint64_t kMimoChannel = 5;
inline constexpr std::uint64_t kMimoNoise = 6;
}  // namespace streams

/// Fixed XOR constant deriving the projector sub-seed from a trial seed.
inline constexpr std::uint64_t kProjectorSubseedXor = 0x9e3779b97f4a7c15ULL;

}  // namespace proxsmooth
