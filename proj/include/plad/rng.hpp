#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

// Deterministic sampling helpers. std::shuffle and the std distributions are
// implementation-defined, so everything that must reproduce bit-for-bit across
// platforms goes through the explicit draws below (mt19937_64 itself is pinned
// by the standard).

namespace plad::rng {

using Engine = std::mt19937_64;

inline std::uint64_t bounded(Engine& eng, std::uint64_t n) {
  return n == 0 ? 0 : eng() % n;
}

/// Uniform in [0,1) with 53 random bits.
inline double unit(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller. Consumes two draws.
inline double normal(Engine& eng) {
  double u1 = unit(eng);
  double u2 = unit(eng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

inline double lognormal(Engine& eng, double mu, double sigma) {
  return std::exp(mu + sigma * normal(eng));
}

template <class T>
void shuffle(std::vector<T>& v, Engine& eng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(eng, i));
    std::swap(v[i - 1], v[j]);
  }
}

/// Weighted index draw; weights need not be normalized. All-zero weights
/// fall back to uniform.
inline std::size_t weighted(Engine& eng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0) return static_cast<std::size_t>(bounded(eng, weights.size()));
  double r = unit(eng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

// ---------------------------------------------------------------------------
// FNV-1a hashing, used for cache keys, manifests and seed derivation.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ull) {
  std::uint64_t h = basis;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

/// 128-bit content digest rendered as 32 hex chars (two FNV-1a passes with
/// distinct bases).
inline std::string digest128_hex(std::string_view data) {
  return hex64(fnv1a64(data)) + hex64(fnv1a64(data, 0x84222325cbf29ce4ull));
}

/// Derives a child seed from a parent seed and a label, so independent
/// sampling streams never interleave.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return fnv1a64(label, seed ^ 0x9e3779b97f4a7c15ull);
}

}  // namespace plad::rng
