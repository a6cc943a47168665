#pragma once

#include <complex>
#include <stdexcept>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "adhoc/net_model.hpp"
#include "adhoc/params.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

class NearFieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double gain(const ChannelParams& p, double r);

// guard threshold: distances below 1e-9 * side are rejected
void check_far_field(double r, double side);

struct ChannelMatrix {
  std::vector<int> rows;  // receive node ids
  std::vector<int> cols;  // transmit node ids
  Eigen::MatrixXd magnitude;  // sqrt(G) r^{-alpha/2}
  Eigen::MatrixXcd entries;

  int num_rows() const { return static_cast<int>(entries.rows()); }
  int num_cols() const { return static_cast<int>(entries.cols()); }
};

// magnitudes from physical distances, phases i.i.d. uniform from seed
ChannelMatrix sample_channel_matrix(const ChannelParams& p, const NetworkInstance& inst,
                                    const std::vector<int>& tx, const std::vector<int>& rx,
                                    std::uint64_t seed);

ChannelMatrix channel_from_magnitudes(Eigen::MatrixXd magnitude, std::uint64_t seed);

// redraw all phases, keeping magnitudes
void redraw_phases(ChannelMatrix& h, Rng& rng);

// sum_{i=1}^{terms} 8 i G p / (3i-1)^alpha
double interference_bound(const ChannelParams& p, double power, long terms);

struct InterferenceMeasurement {
  double mean_power = 0.0;
  double cross_correlation = 0.0;  // |E[I_v conj(I_v')]|
  double mean_power_second = 0.0;
  int interferers = 0;
};

// probes must share a cell of the given color; every node of the other cells with
// that color transmits at P A_c^{alpha/2} / M with M = n / cells
InterferenceMeasurement measured_interference(const NetworkInstance& inst, const ClusterGrid& grid,
                                              int color, int probe, int second_probe,
                                              const ChannelParams& p, std::uint64_t seed, int trials);

}  // namespace adhoc
