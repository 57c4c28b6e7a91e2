#include "regres/rng.hpp"

#include <stdexcept>

namespace regres {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
  // Largest multiple of bound that fits; reject the tail to stay unbiased.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % bound;
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix_seed(seed_ ^ mix_seed(stream + 0x632be59bd9b4e019ULL)));
}

}  // namespace regres
