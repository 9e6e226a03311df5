#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "compsep/types.hpp"

namespace compsep {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of substream `stream` under a master seed. Substreams depend only on
// (seed, stream), so replicates can run in any order or on any thread.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(substream_seed(seed, stream));
}

// Uniform double in [0, 1) from the top 53 bits. Used instead of
// std::uniform_real_distribution so draws are identical across standard
// library implementations.
template <typename URBG>
double uniform01(URBG& rng) {
  static_assert(URBG::max() == ~std::uint64_t{0} && URBG::min() == 0, "needs a 64-bit generator");
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
template <typename URBG>
std::size_t uniform_index(URBG& rng, std::size_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t b = bound;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % b);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

// Inverse-CDF sampler over the eight (c, y, a) cells.
class CellSampler {
public:
  explicit CellSampler(const JointDistribution& d) {
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      acc += d.cells()[i];
      cumulative_[i] = acc;
      if (d.cells()[i] > 0.0) last_positive = i;
    }
    // Rounding in the running sum must not leave a gap at the top.
    for (std::size_t i = last_positive; i < 8; ++i) cumulative_[i] = 2.0;
  }

  template <typename URBG>
  LabeledPoint operator()(URBG& rng) const {
    const double u = uniform01(rng);
    std::size_t i = 0;
    while (u >= cumulative_[i]) ++i;
    LabeledPoint p;
    p.c = static_cast<double>(i / 4);
    p.y = static_cast<double>((i / 2) % 2);
    p.a = static_cast<int>(i % 2);
    return p;
  }

private:
  std::array<double, 8> cumulative_{};
};

}  // namespace compsep
