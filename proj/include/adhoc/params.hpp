#pragma once

#include <stdexcept>
#include <string>

namespace adhoc {

struct ChannelParams {
  double G = 1.0;
  double P = 1.0;
  double N0 = 1.0;
  double alpha = 3.0;
};

inline void validate(const ChannelParams& p) {
  if (!(p.alpha >= 2.0))
    throw std::invalid_argument("path-loss exponent must be >= 2, got " + std::to_string(p.alpha));
  if (!(p.G > 0.0) || !(p.P > 0.0) || !(p.N0 > 0.0))
    throw std::invalid_argument("G, P and N0 must be positive");
}

}  // namespace adhoc
