#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace childplay {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return mix_seed(base ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with portable distributions. The standard library's
/// distributions are implementation-defined, so every draw here goes through
/// mt19937_64 output directly and is reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t draw;
    do {
      draw = next();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % range);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }

  /// Uniform real in [0, 1) with 53 bits of precision.
  double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[index(i)]);
  }

  template <typename T>
  const T& pick(std::span<const T> items) {
    return items[index(items.size())];
  }

  /// Index drawn proportionally to `weights` (non-negative, not all zero).
  std::size_t weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = uniform_real() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (r < weights[i]) return i;
      r -= weights[i];
    }
    for (std::size_t i = weights.size(); i > 0; --i)
      if (weights[i - 1] > 0) return i - 1;
    return 0;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace childplay
