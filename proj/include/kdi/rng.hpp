#pragma once

#include <cstdint>
#include <random>

namespace kdi::rng {

//! All randomness flows through std::mt19937_64 (bit-stable across
//! platforms by the standard) with the value-to-variate mappings below, so
//! identical (spec, n, seed) inputs yield bit-identical streams anywhere.
using Engine = std::mt19937_64;

//! splitmix64 finalizer; the documented seed-splitting scheme is
//! derive_seed(master, k) = splitmix64(master + (k+1) * 0x9E3779B97F4A7C15),
//! giving decorrelated per-task streams independent of execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

//! Uniform on [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double a, double b) {
  return a + (b - a) * uniform01(eng);
}

//! Box-Muller, cosine branch; consumes exactly two draws per call.
inline double normal(Engine& eng, double mu = 0.0, double sigma = 1.0) {
  const double u1 = 1.0 - uniform01(eng);  // (0, 1], keeps the log finite
  const double u2 = uniform01(eng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
}

//! Rate parameterization: mean 1/rate.
inline double exponential(Engine& eng, double rate) {
  return -std::log(1.0 - uniform01(eng)) / rate;
}

//! Index uniform on {0, .., n-1}; floor of u01*n (bias < 2^-53, and the
//! mapping is part of the documented stream contract).
inline std::size_t index(Engine& eng, std::size_t n) {
  const auto k = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(n));
  return k >= n ? n - 1 : k;
}

} // namespace kdi::rng
