#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cabdm {

// SplitMix64 step. Used to expand a 64-bit seed into generator state and to
// derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// xoshiro256** seeded through SplitMix64. The output stream for a given seed
// is part of the reproducibility contract: do not change the algorithm
// without regenerating every frozen value in tests/.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  // One stream per (experiment, seed) pair, so results never depend on the
  // order in which parallel workers consume streams.
  static Rng stream(std::string_view experiment, std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  std::uint64_t operator()() noexcept { return next(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() noexcept;

  // Uniform in [0, bound) by 128-bit multiply-shift; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

// FNV-1a of an experiment tag mixed with the seed; stable across platforms.
std::uint64_t derive_seed(std::string_view experiment, std::uint64_t seed) noexcept;

}  // namespace cabdm
