#include "adhoc/rng.hpp"

#include <bit>
#include <cmath>

namespace adhoc {

std::uint64_t mix(std::uint64_t h, double v) {
  if (v == 0.0) v = 0.0;  // fold -0.0
  return mix(h, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t mix(std::uint64_t h, std::string_view s) {
  // FNV-1a over the bytes, then mixed
  std::uint64_t f = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    f ^= c;
    f *= 0x100000001b3ULL;
  }
  return mix(h, f);
}

std::uint64_t cell_seed(std::uint64_t master, std::string_view scheme, int n, double alpha, int trial) {
  std::uint64_t h = splitmix64(master);
  h = mix(h, scheme);
  h = mix(h, static_cast<std::uint64_t>(n));
  h = mix(h, alpha);
  return mix(h, static_cast<std::uint64_t>(trial));
}

std::uint64_t instance_seed(std::uint64_t master, std::string_view regime, int n, int trial) {
  std::uint64_t h = splitmix64(master ^ 0x5bd1e995ULL);
  h = mix(h, regime);
  h = mix(h, static_cast<std::uint64_t>(n));
  return mix(h, static_cast<std::uint64_t>(trial));
}

}  // namespace adhoc
