#include "adhoc/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adhoc {

MimoSession build_mimo_session(const NetworkInstance& inst, const ClusterGrid& grid, int src, int dst,
                               const ChannelParams& p) {
  if (src == dst) throw std::invalid_argument("session needs two distinct clusters");
  MimoSession s;
  s.src_cluster = src;
  s.dst_cluster = dst;
  const int dx = grid.cx(dst) - grid.cx(src), dy = grid.cy(dst) - grid.cy(src);
  s.neighbor_mode = std::max(std::abs(dx), std::abs(dy)) == 1;
  if (s.neighbor_mode) {
    const int axis = dx != 0 ? 0 : 1;
    const int toward = (axis == 0 ? dx : dy) > 0 ? 1 : 0;  // half of S facing D
    s.tx_nodes = grid.halves[src][axis][1 - toward];
    s.rx_nodes = grid.halves[dst][axis][toward];
  } else {
    s.tx_nodes = grid.members[src];
    s.rx_nodes = grid.members[dst];
  }
  const Point a = grid.center(src), b = grid.center(dst);
  s.r_sd = inst.side * std::sqrt(dist2(a, b));
  const double m = static_cast<double>(grid.members[src].size());
  s.per_node_power = m > 0 ? p.P * std::pow(s.r_sd, p.alpha) / m : 0.0;
  return s;
}

PowerBounds received_power_bounds(const ChannelParams& p) {
  const double r2 = std::numbers::sqrt2;
  return {std::pow(r2 / (r2 + 1), p.alpha) * p.G * p.P + p.N0, std::pow(r2 / (r2 - 1), p.alpha) * p.G * p.P + p.N0};
}

RhoRange rho_range(double alpha) {
  const double r2 = std::numbers::sqrt2;
  return {std::pow(r2 / (r2 + 1), alpha / 2), std::pow(r2 / (r2 - 1), alpha / 2)};
}

RhoRange rho_range_neighbor(double alpha) {
  // horizontal neighbours: r_sd = s, r in [s, sqrt(5) s]; diagonal: r_sd = sqrt(2) s, r in [s, sqrt(8) s]
  const double horiz_lo = std::pow(5.0, -alpha / 4), diag_lo = std::pow(2.0, -alpha / 2);
  return {std::min(horiz_lo, diag_lo), std::pow(2.0, alpha / 4)};
}

RhoRange rho_range_combined(double alpha) {
  const RhoRange a = rho_range(alpha), b = rho_range_neighbor(alpha);
  return {std::min(a.a, b.a), std::max(a.b, b.b)};
}

std::vector<double> session_rho_values(const NetworkInstance& inst, const MimoSession& s, double alpha) {
  std::vector<double> out;
  out.reserve(s.tx_nodes.size() * s.rx_nodes.size());
  for (int k : s.tx_nodes)
    for (int i : s.rx_nodes) out.push_back(std::pow(s.r_sd / inst.physical_distance(i, k), alpha / 2));
  return out;
}

std::vector<double> received_power(const NetworkInstance& inst, const MimoSession& s, const ChannelParams& p) {
  std::vector<double> out;
  out.reserve(s.rx_nodes.size());
  for (int d : s.rx_nodes) {
    double acc = 0.0;
    for (int k : s.tx_nodes) acc += gain(p, inst.physical_distance(d, k)) * s.per_node_power;
    out.push_back(acc + p.N0);
  }
  return out;
}

MeanEstimate received_power_mc(const NetworkInstance& inst, const MimoSession& s, const ChannelParams& p, int d,
                               int trials, std::uint64_t seed) {
  std::vector<double> mag;
  for (int k : s.tx_nodes) mag.push_back(std::sqrt(gain(p, inst.physical_distance(s.rx_nodes.at(d), k))));
  const double amp = std::sqrt(s.per_node_power), namp = std::sqrt(p.N0);
  auto v = kernels::run_trials(trials, seed, [&](int, Rng& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::complex<double> y(namp * g(rng), namp * g(rng));
    for (double m : mag) y += std::polar(m, u(rng)) * std::complex<double>(amp * g(rng), amp * g(rng));
    return std::norm(y);
  });
  return kernels::summarize(v);
}

double log2det_identity_plus(const Eigen::MatrixXcd& h, double c) {
  if (!h.allFinite()) throw NumericError("channel matrix has non-finite entries");
  if (h.size() == 0 || c == 0.0) return 0.0;
  Eigen::MatrixXcd a;
  if (h.rows() <= h.cols()) {
    a = c * (h * h.adjoint());
  } else {
    a = c * (h.adjoint() * h);
  }
  a.diagonal().array() += 1.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) throw NumericError("log-det argument is not positive definite");
  const auto& l = llt.matrixLLT();
  double s = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log2(l(i, i).real());
  return 2.0 * s;
}

namespace {

MeanEstimate mi_trials(const ChannelMatrix& h, double c, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  auto v = kernels::run_trials(trials, seed, [&](int, Rng& rng) {
    ChannelMatrix local;
    local.magnitude = h.magnitude;
    redraw_phases(local, rng);
    return log2det_identity_plus(local.entries, c);
  });
  return kernels::summarize(v);
}

}  // namespace

MeanEstimate mimo_mutual_information(const ChannelMatrix& h, double sigma_sq, double noise, int trials,
                                     std::uint64_t seed) {
  if (!(noise > 0.0)) throw std::invalid_argument("noise must be positive");
  return mi_trials(h, sigma_sq / noise, trials, seed);
}

double paley_zygmund_bound(double a, double b, double snr, double m, double t) {
  if (!(t >= 0.0) || !(t < a * a)) throw std::invalid_argument("threshold t must lie in [0, a^2)");
  const double g = a * a - t;
  return m * std::log2(1.0 + snr * t) * g * g / (2.0 * std::pow(b, 4));
}

double pz_threshold(double a) { return a / 2 < a * a ? a / 2 : a * a / 2; }

double pz_per_antenna_rate(double alpha, double snr) {
  const RhoRange far = rho_range(alpha), near = rho_range_neighbor(alpha);
  return std::min(paley_zygmund_bound(far.a, far.b, snr, 1.0, pz_threshold(far.a)),
                  paley_zygmund_bound(near.a, near.b, snr, 1.0, pz_threshold(near.a)));
}

EigenMoments eigen_moment_stats(const ChannelMatrix& f, int trials, std::uint64_t seed) {
  const double m = static_cast<double>(f.magnitude.cols());
  const double rows = static_cast<double>(f.magnitude.rows());
  std::vector<double> l1(trials), l2(trials);
  kernels::run_trials(trials, seed, [&](int t, Rng& rng) {
    ChannelMatrix local;
    local.magnitude = f.magnitude;
    redraw_phases(local, rng);
    const Eigen::MatrixXcd w = local.entries * local.entries.adjoint() / m;
    l1[t] = w.trace().real() / rows;
    l2[t] = w.squaredNorm() / rows;
    return 0.0;
  });
  const auto e1 = kernels::summarize(l1), e2 = kernels::summarize(l2);
  return {e1.mean, e2.mean, e1.std_error, e2.std_error};
}

double quantizer_rate(double p2, double delta_sq, double epsilon) {
  if (!(delta_sq > 0.0)) throw std::invalid_argument("quantization noise must be positive");
  return std::log2(1.0 + p2 / delta_sq) + epsilon;
}

QuantizerSpec default_quantizer(const ChannelParams& p, double epsilon) {
  const double p2 = received_power_bounds(p).p2;
  return {p2, quantizer_rate(p2, p2, epsilon)};
}

MeanEstimate quantized_mutual_information(const ChannelMatrix& h, double sigma_sq, double noise,
                                          const QuantizerSpec& q, int trials, std::uint64_t seed) {
  if (!(q.delta_sq > 0.0)) throw std::invalid_argument("quantization noise must be positive");
  return mi_trials(h, sigma_sq / (noise + q.delta_sq), trials, seed);
}

double log_m_scale_factor(double p2, double interference) { return std::sqrt(p2 / (p2 + interference)); }

MeanEstimate log_m_scaled_quantized_mi(const ChannelMatrix& h, double sigma_sq, double noise, double interference,
                                       const QuantizerSpec& q, double p2, int trials, std::uint64_t seed) {
  if (!(interference >= 0.0)) throw std::invalid_argument("interference power must be non-negative");
  const double s = log_m_scale_factor(p2, interference);
  const double q2 = s * s;
  return mi_trials(h, q2 * sigma_sq / (q2 * (noise + interference) + q.delta_sq), trials, seed);
}

}  // namespace adhoc
