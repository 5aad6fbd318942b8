#ifndef MORBDD_RNG_HPP_
#define MORBDD_RNG_HPP_

#include <cstdint>
#include <random>

namespace morbdd {

// All randomness in the library flows through std::mt19937_64, whose output
// sequence is pinned by the standard, together with the helpers below.  The
// standard distributions are implementation defined, so they are never used;
// this keeps every seeded artifact bit-identical across compilers.
using Rng = std::mt19937_64;

// splitmix64 finalizer (Stafford mix 13), used to derive independent stream
// seeds from a master seed without correlations between adjacent streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(master ^ mix64(stream));
}

// Unbiased integer in [lo, hi] via rejection sampling on the top bits.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(rng());  // full 64-bit span
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace morbdd

#endif  // MORBDD_RNG_HPP_
