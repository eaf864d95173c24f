#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace dpcut {

/// Seedable 64-bit generator threaded explicitly through every randomized
/// operation.
///
/// Streams are derived with split(): the child seed is
///   splitmix64(seed ^ splitmix64(stream + 0x9e3779b97f4a7c15))
/// and depends only on the parent's seed, never on how many values the
/// parent has drawn. Distinct stream indices give statistically independent
/// children; the same (seed, stream) always gives the same child.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  [[nodiscard]] Rng split(std::uint64_t stream) const;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform in [lo, hi], inclusive.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  bool coin() { return (engine_() >> 63) != 0; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace dpcut
