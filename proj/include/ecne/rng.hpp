#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ecne {

// Mixes a 64-bit value into a well-distributed one (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent, reproducible stream for a (seed, tag...) tuple. Used to give
// every walk / example / pass its own generator so results do not depend on
// worker count or scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  s = mix64(s ^ c);
  return std::mt19937_64(s);
}

// Uniform double in [0, 1). Built from raw bits so the value sequence is
// pinned by this code, not by the standard library's distribution.
inline double next_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be > 0.
inline std::size_t next_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(next_double(rng) * static_cast<double>(n));
}

template <typename T>
void shuffle_inplace(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = next_index(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ecne
