#include "adhoc/channel.hpp"

#include <cmath>
#include <numbers>

#include "adhoc/kernels.hpp"

namespace adhoc {

double gain(const ChannelParams& p, double r) {
  if (!(r > 0.0)) throw NearFieldError("gain requested at non-positive distance");
  return p.G * std::pow(r, -p.alpha);
}

void check_far_field(double r, double side) {
  if (!(r >= 1e-9 * side)) throw NearFieldError("distance " + std::to_string(r) + " inside the near-field guard");
}

void redraw_phases(ChannelMatrix& h, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  h.entries.resize(h.magnitude.rows(), h.magnitude.cols());
  for (Eigen::Index k = 0; k < h.magnitude.cols(); ++k)
    for (Eigen::Index i = 0; i < h.magnitude.rows(); ++i) h.entries(i, k) = std::polar(h.magnitude(i, k), u(rng));
}

ChannelMatrix channel_from_magnitudes(Eigen::MatrixXd magnitude, std::uint64_t seed) {
  ChannelMatrix h;
  h.magnitude = std::move(magnitude);
  Rng rng = make_rng(seed);
  redraw_phases(h, rng);
  return h;
}

ChannelMatrix sample_channel_matrix(const ChannelParams& p, const NetworkInstance& inst,
                                    const std::vector<int>& tx, const std::vector<int>& rx,
                                    std::uint64_t seed) {
  Eigen::MatrixXd mag(rx.size(), tx.size());
  const double sg = std::sqrt(p.G);
  for (std::size_t k = 0; k < tx.size(); ++k)
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double r = inst.physical_distance(rx[i], tx[k]);
      check_far_field(r, inst.side);
      mag(i, k) = sg * std::pow(r, -p.alpha / 2);
    }
  ChannelMatrix h = channel_from_magnitudes(std::move(mag), seed);
  h.rows = rx;
  h.cols = tx;
  return h;
}

double interference_bound(const ChannelParams& p, double power, long terms) {
  if (terms < 1) throw std::invalid_argument("interference bound needs at least one term");
  double s = 0.0;
  // summed from the smallest terms up to keep long tails accurate
  for (long i = terms; i >= 1; --i) s += 8.0 * i / std::pow(3.0 * i - 1.0, p.alpha);
  return p.G * power * s;
}

InterferenceMeasurement measured_interference(const NetworkInstance& inst, const ClusterGrid& grid,
                                              int color, int probe, int second_probe,
                                              const ChannelParams& p, std::uint64_t seed, int trials) {
  InterferenceMeasurement out;
  const int home = grid.cell_of[probe];
  if (grid.color(home) != color) throw std::invalid_argument("probe does not lie in a cell of that color");
  if (grid.cell_of[second_probe] != home) throw std::invalid_argument("second probe must share the probe's cell");
  std::vector<int> tx;
  for (int c = 0; c < grid.num_cells(); ++c)
    if (c != home && grid.color(c) == color) tx.insert(tx.end(), grid.members[c].begin(), grid.members[c].end());
  out.interferers = static_cast<int>(tx.size());
  if (tx.empty()) return out;

  const double m = static_cast<double>(inst.n) / grid.num_cells();
  const double power = p.P * std::pow(grid.cell_area, p.alpha / 2) / m;
  const double amp = std::sqrt(power);
  ChannelMatrix h = sample_channel_matrix(p, inst, tx, {probe, second_probe}, seed);
  const Eigen::Index k = h.magnitude.cols();

  // each trial redraws phases and unit-power Gaussian symbols
  std::vector<std::complex<double>> cross(trials);
  std::vector<double> second(trials);
  auto pw = kernels::run_trials(
      trials, mix(seed, std::string_view("interference")),
      [&](int t, Rng& rng) {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        std::complex<double> i1 = 0.0, i2 = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) {
          const std::complex<double> x(amp * g(rng), amp * g(rng));
          i1 += std::polar(h.magnitude(0, j), u(rng)) * x;
          i2 += std::polar(h.magnitude(1, j), u(rng)) * x;
        }
        cross[t] = i1 * std::conj(i2);
        second[t] = std::norm(i2);
        return std::norm(i1);
      });
  out.mean_power = kernels::summarize(pw).mean;
  out.mean_power_second = kernels::summarize(second).mean;
  std::complex<double> cs = 0.0;
  for (const auto& c : cross) cs += c;
  out.cross_correlation = std::abs(cs / static_cast<double>(trials));
  return out;
}

}  // namespace adhoc
