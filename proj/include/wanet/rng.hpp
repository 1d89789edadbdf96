#pragma once

#include <cstdint>
#include <random>

namespace wanet {

/// Identifies one Monte Carlo trial. Every random stream used by a trial is a
/// pure function of these two numbers, so trials can run in any order.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t trial_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Independent sub-streams of a trial.
enum class Stream : std::uint64_t {
  kPlacement = 1,
  kFailure = 2,
  kPairing = 3,
  kChannel = 4,
  kAuxiliary = 5,
};

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(SeedSpec seed, Stream stream) noexcept {
  std::uint64_t h = mix64(seed.base_seed);
  h = mix64(h ^ seed.trial_index);
  return mix64(h ^ static_cast<std::uint64_t>(stream));
}

inline Engine make_engine(SeedSpec seed, Stream stream) { return Engine(derive_seed(seed, stream)); }

}  // namespace wanet
