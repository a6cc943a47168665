#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "adhoc/channel.hpp"
#include "adhoc/net_model.hpp"

using namespace adhoc;

TEST(Gain, PowerLaw) {
  const ChannelParams p{2.0, 1.0, 1.0, 3.0};
  EXPECT_DOUBLE_EQ(gain(p, 2.0), 2.0 / 8.0);
  EXPECT_THROW(gain(p, 0.0), NearFieldError);
}

TEST(Gain, FarFieldGuard) {
  EXPECT_NO_THROW(check_far_field(1e-8, 1.0));
  EXPECT_THROW(check_far_field(1e-10, 1.0), NearFieldError);
  EXPECT_THROW(check_far_field(1e-8, 100.0), NearFieldError);
}

TEST(Params, Validation) {
  ChannelParams p;
  EXPECT_NO_THROW(validate(p));
  p.alpha = 1.9;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p.alpha = 2.0;
  p.N0 = 0.0;
  EXPECT_THROW(validate(p), std::invalid_argument);
}

TEST(ChannelMatrix, MagnitudesFromDistances) {
  const auto inst = instance_from_points({{0.0, 0.0}, {0.3, 0.4}, {0.6, 0.8}}, {});
  const ChannelParams p{4.0, 1.0, 1.0, 2.0};
  const auto h = sample_channel_matrix(p, inst, {0}, {1, 2}, 7);
  ASSERT_EQ(h.num_rows(), 2);
  ASSERT_EQ(h.num_cols(), 1);
  // sqrt(G) r^{-alpha/2}: r = 0.5 and 1.0
  EXPECT_NEAR(h.magnitude(0, 0), 2.0 / 0.5, 1e-12);
  EXPECT_NEAR(h.magnitude(1, 0), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(h.entries(0, 0)), h.magnitude(0, 0), 1e-12);
}

TEST(ChannelMatrix, CoincidentNodesRejected) {
  const auto inst = instance_from_points({{0.5, 0.5}, {0.5, 0.5}}, {});
  EXPECT_THROW(sample_channel_matrix(ChannelParams{}, inst, {0}, {1}, 1), NearFieldError);
}

TEST(ChannelMatrix, PhasesUniform) {
  Eigen::MatrixXd mag = Eigen::MatrixXd::Ones(200, 200);
  const auto h = channel_from_magnitudes(mag, 3);
  // mean of e^{i theta} over 40000 draws has standard deviation ~ 0.0035
  EXPECT_LT(std::abs(h.entries.mean()), 0.02);
  EXPECT_NEAR(h.entries.cwiseAbs2().mean(), 1.0, 1e-12);
}

TEST(Interference, TwoTermValue) {
  // 8/2^3 + 16/5^3
  const ChannelParams p{1.0, 1.0, 1.0, 3.0};
  EXPECT_NEAR(interference_bound(p, 1.0, 2), 1.0 + 16.0 / 125.0, 1e-15);
  EXPECT_NEAR(interference_bound(p, 1.0, 2), 1.128, 1e-12);
  EXPECT_THROW(interference_bound(p, 1.0, 0), std::invalid_argument);
}

TEST(Interference, ScalesWithGainAndPower) {
  const ChannelParams p{3.0, 1.0, 1.0, 4.0};
  const ChannelParams unit{1.0, 1.0, 1.0, 4.0};
  EXPECT_NEAR(interference_bound(p, 2.0, 50), 6.0 * interference_bound(unit, 1.0, 50), 1e-12);
}

TEST(Interference, Alpha2GrowsLogarithmically) {
  const ChannelParams p{1.0, 1.0, 1.0, 2.0};
  const double a = interference_bound(p, 1.0, 10000), b = interference_bound(p, 1.0, 100000);
  EXPECT_NEAR(b - a, 8.0 / 9.0 * std::log(10.0), 1e-3);
}

TEST(Interference, MeasuredBelowBound) {
  const ChannelParams p{1.0, 1.0, 1.0, 3.0};
  const auto inst = sample_network(1024, Regime::dense, 21);
  const auto grid = build_cluster_grid(inst, 16);
  int cell = -1;
  for (int c = 0; c < grid.num_cells(); ++c)
    if (grid.members[c].size() >= 2 && grid.cx(c) > 2 && grid.cy(c) > 2) {
      cell = c;
      break;
    }
  ASSERT_GE(cell, 0);
  const auto m = measured_interference(inst, grid, grid.color(cell), grid.members[cell][0], grid.members[cell][1], p,
                                       5, 2000);
  EXPECT_GT(m.interferers, 0);
  EXPECT_GT(m.mean_power, 0.0);
  EXPECT_LE(m.mean_power, interference_bound(p, p.P, grid.num_cells()));
  EXPECT_LT(m.cross_correlation, 0.1 * m.mean_power);
}

TEST(Interference, ProbeMustMatchColour) {
  const auto inst = sample_network(256, Regime::dense, 2);
  const auto grid = build_cluster_grid_dim(inst, 4);
  const int probe = 0, c = grid.cell_of[probe];
  EXPECT_THROW(measured_interference(inst, grid, (grid.color(c) + 1) % 9, probe, probe, ChannelParams{}, 1, 10),
               std::invalid_argument);
}
