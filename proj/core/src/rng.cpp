#include "vlsf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlsf {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) {
  // Position `stream` of the SplitMix64 sequence started at the master seed.
  return splitmix64(master_seed + (stream + 1) * 0x9e3779b97f4a7c15ull);
}

double Rng::uniform() {
  return static_cast<double>((gen_() >> 11) + 1) * 0x1p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw std::domain_error("uniform_index: bound must be positive");
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t draw;
  do {
    draw = gen_();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace vlsf
