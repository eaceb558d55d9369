#pragma once

#include <cstdint>
#include <random>

#include "repval/rational.hpp"

namespace repval {

/// Deterministic, platform-independent random source. std::mt19937_64
/// itself is portable, but std::uniform_int_distribution is not, so the
/// integer draws here use rejection sampling and must not be replaced
/// with the standard distribution adaptors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t u64();

  /// Uniform in {0, ..., bound-1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

  /// Uniform rational k/denominator with k in {0, ..., denominator}.
  Rational unit_rational(std::uint64_t denominator);

  /// Random point of the probability simplex with the given number of
  /// coordinates, each a rational with the given denominator.
  RVec simplex_point(std::size_t coords, std::uint64_t denominator);

  /// Independent stream for the given index. Two substreams of the same
  /// Rng never share state, so per-trial simulations stay reproducible
  /// regardless of evaluation order.
  Rng substream(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 step, used to decorrelate seeds for substreams.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace repval
