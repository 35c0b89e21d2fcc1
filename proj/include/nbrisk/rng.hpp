#ifndef NBRISK_RNG_HPP_
#define NBRISK_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nbrisk {

// SplitMix64 finalizer. Used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a master seed and a list of coordinates (size, degree bits, replicate
// index, ...) into one substream seed. Order of coordinates matters.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coords) noexcept;

// Bit pattern of a double, so real-valued parameters can take part in seed
// derivation without rounding collisions.
std::uint64_t double_bits(double x) noexcept;

// The project's random source: std::mt19937_64 (whose output sequence is fixed
// by the standard) with distribution code written here rather than taken from
// <random>, whose distributions are implementation-defined. Identical seeds give
// identical draws on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound > 0. Unbiased (Lemire's method).
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nbrisk

#endif  // NBRISK_RNG_HPP_
