#include "repval/rng.hpp"

#include <stdexcept>

namespace repval {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::u64() { return engine_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection keeps the draw exactly uniform and identical across
  // standard libraries.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = u64();
  } while (x >= limit);
  return x % bound;
}

double Rng::unit() {
  return static_cast<double>(u64() >> 11) * 0x1.0p-53;
}

Rational Rng::unit_rational(std::uint64_t denominator) {
  if (denominator == 0)
    throw std::invalid_argument("Rng::unit_rational: zero denominator");
  return Rational(BigInt(below(denominator + 1)), BigInt(denominator));
}

RVec Rng::simplex_point(std::size_t coords, std::uint64_t denominator) {
  if (coords == 0)
    throw std::invalid_argument("Rng::simplex_point: zero coords");
  // Stars-and-bars: sorted cut points of {0,...,denominator}.
  std::vector<std::uint64_t> cuts(coords - 1);
  for (auto& c : cuts) c = below(denominator + 1);
  std::sort(cuts.begin(), cuts.end());
  RVec out(coords);
  std::uint64_t prev = 0;
  for (std::size_t k = 0; k + 1 < coords; ++k) {
    out[k] = Rational(BigInt(cuts[k] - prev), BigInt(denominator));
    prev = cuts[k];
  }
  out[coords - 1] = Rational(BigInt(denominator - prev), BigInt(denominator));
  return out;
}

Rng Rng::substream(std::uint64_t index) const {
  std::uint64_t state = seed_ ^ 0xa02bdbf7bb3c0a7ull;
  std::uint64_t a = splitmix64(state);
  state ^= index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull;
  std::uint64_t b = splitmix64(state);
  return Rng(a ^ (b + index));
}

}  // namespace repval
