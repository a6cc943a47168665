#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace adhoc {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

std::uint64_t mix(std::uint64_t h, double v);
std::uint64_t mix(std::uint64_t h, std::string_view s);

// seed for one (scheme, n, alpha, trial) cell of a sweep
std::uint64_t cell_seed(std::uint64_t master, std::string_view scheme, int n, double alpha, int trial);

// seed for the geometry shared by every scheme of a regime
std::uint64_t instance_seed(std::uint64_t master, std::string_view regime, int n, int trial);

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace adhoc
