#pragma once

#include <cstdint>
#include <vector>

#include "adhoc/channel.hpp"
#include "adhoc/kernels.hpp"
#include "adhoc/net_model.hpp"
#include "adhoc/params.hpp"

namespace adhoc {

using kernels::MeanEstimate;

struct MimoSession {
  int src_cluster = 0;
  int dst_cluster = 0;
  std::vector<int> tx_nodes;
  std::vector<int> rx_nodes;
  double r_sd = 0.0;            // physical mid-point distance
  double per_node_power = 0.0;  // P r_sd^alpha / M, M = source cluster size
  bool neighbor_mode = false;
};

// Neighboring cells (Chebyshev distance 1) use far halves: split along x unless the
// cells are vertical neighbors.
MimoSession build_mimo_session(const NetworkInstance& inst, const ClusterGrid& grid, int src, int dst,
                               const ChannelParams& p);

struct PowerBounds {
  double p1 = 0.0;
  double p2 = 0.0;
};

PowerBounds received_power_bounds(const ChannelParams& p);

struct RhoRange {
  double a = 0.0;
  double b = 0.0;
};

RhoRange rho_range(double alpha);
RhoRange rho_range_neighbor(double alpha);
// widest of the two
RhoRange rho_range_combined(double alpha);

// rho_ik = (r_sd / r_ik)^{alpha/2} over the session's tx x rx pairs
std::vector<double> session_rho_values(const NetworkInstance& inst, const MimoSession& s, double alpha);

// E|Y_d|^2 = sum_s G p r_ds^{-alpha} + N0 for every rx node
std::vector<double> received_power(const NetworkInstance& inst, const MimoSession& s, const ChannelParams& p);

// Monte Carlo of |Y_d|^2 for rx node index d with Gaussian symbols and noise
MeanEstimate received_power_mc(const NetworkInstance& inst, const MimoSession& s, const ChannelParams& p,
                               int d, int trials, std::uint64_t seed);

// log2 det(I + c H H^*) for one realization via Cholesky of the smaller Gram matrix
double log2det_identity_plus(const Eigen::MatrixXcd& h, double c);

// every trial redraws the phases of h, magnitudes fixed
MeanEstimate mimo_mutual_information(const ChannelMatrix& h, double sigma_sq, double noise, int trials,
                                     std::uint64_t seed);

// M log2(1 + snr t) (a^2 - t)^2 / (2 b^4); t must be below a^2
double paley_zygmund_bound(double a, double b, double snr, double m, double t);

// t = a/2 where valid, otherwise a^2/2
double pz_threshold(double a);

// per-antenna constant of the bound at pz_threshold for the worse of neighbor and non-neighbor geometry
double pz_per_antenna_rate(double alpha, double snr);

struct EigenMoments {
  double mean_lambda = 0.0;
  double mean_lambda_sq = 0.0;
  double se_lambda = 0.0;
  double se_lambda_sq = 0.0;
};

// lambda uniform over the eigenvalues of (1/M) F F^*, M = number of columns
EigenMoments eigen_moment_stats(const ChannelMatrix& f, int trials, std::uint64_t seed);

struct QuantizerSpec {
  double delta_sq = 1.0;
  double rate_q = 1.0;
};

double quantizer_rate(double p2, double delta_sq, double epsilon);

// delta^2 = P2 and rate from quantizer_rate
QuantizerSpec default_quantizer(const ChannelParams& p, double epsilon = 0.1);

MeanEstimate quantized_mutual_information(const ChannelMatrix& h, double sigma_sq, double noise,
                                          const QuantizerSpec& q, int trials, std::uint64_t seed);

// q = sqrt(P2 / (P2 + interference))
double log_m_scale_factor(double p2, double interference);

// Y = q (H X + Z + I) + D with interference treated as Gaussian noise
MeanEstimate log_m_scaled_quantized_mi(const ChannelMatrix& h, double sigma_sq, double noise, double interference,
                                       const QuantizerSpec& q, double p2, int trials, std::uint64_t seed);

}  // namespace adhoc
