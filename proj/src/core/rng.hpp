#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace apspc {

// All randomness flows through mt19937_64 plus the mappings below.
// std::uniform_int_distribution / uniform_real_distribution are
// implementation-defined, so the mappings are spelled out here to keep
// results bit-identical across standard libraries.
using Engine = std::mt19937_64;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derive an independent stream seed from a master seed and up to three
// coordinates (e.g. generation, population, chromosome slot).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = master;
  h = mix64(h + 0x9E3779B97F4A7C15ull + a);
  h = mix64(h + 0x9E3779B97F4A7C15ull + b);
  h = mix64(h + 0x9E3779B97F4A7C15ull + c);
  return h;
}

// Uniform double in [0, 1) using the top 53 bits of one engine draw.
inline double canonical01(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) by rejection; unbiased for any bound.
inline std::uint64_t uniform_below(Engine& g, std::uint64_t bound) {
  const std::uint64_t max = ~0ull;
  const std::uint64_t rem = (max % bound + 1) % bound;
  std::uint64_t x = g();
  while (rem != 0 && x > max - rem) x = g();
  return x % bound;
}

// Uniform integer in [lo, hi], inclusive.
inline std::int64_t uniform_int(Engine& g, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(uniform_below(g, span));
}

// Map a random key in [0, 1) to an engine seed, spreading the key across
// the full 64-bit range so nearby keys give unrelated streams.
inline std::uint64_t seed_from_key(double key) {
  if (key <= 0.0) return 0;
  if (key >= 1.0) return ~0ull;
  return static_cast<std::uint64_t>(std::ldexp(key, 64));
}

}  // namespace apspc
