#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace regres {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seedable, splittable random source.
///
/// Bounded draws use rejection on raw 64-bit output instead of
/// std::uniform_int_distribution so that a (seed, call sequence) pair
/// replays identically across standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(mix_seed(seed)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const { return seed_; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1).
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  /// Independent child stream; the parent state is not advanced.
  Rng split(std::uint64_t stream) const;

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace regres
