#include <gtest/gtest.h>

#include <cmath>

#include "adhoc/channel.hpp"
#include "adhoc/kernels.hpp"
#include "adhoc/net_model.hpp"

using namespace adhoc;
using kernels::Exec;

namespace {

std::vector<double> brute_sums(const std::vector<Point>& a, const std::vector<Point>& b, double scale, double alpha) {
  std::vector<double> out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& q : b) out[i] += std::pow(scale * std::sqrt(dist2(a[i], q)), -alpha);
  return out;
}

}  // namespace

TEST(InversePowerSums, MatchesBruteForce) {
  const auto a = sample_network(50, Regime::dense, 1).positions;
  const auto b = sample_network(70, Regime::dense, 2).positions;
  for (double alpha : {2.0, 2.5, 4.0}) {
    const auto got = kernels::inverse_power_sums(a, b, 3.0, alpha, Exec::serial);
    const auto want = brute_sums(a, b, 3.0, alpha);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10 * want[i]);
  }
}

TEST(InversePowerSums, SerialAndParallelBitIdentical) {
  const auto pts = sample_network(600, Regime::dense, 4).positions;
  const auto s = kernels::inverse_power_sums_self(pts, 2.0, 3.0, Exec::serial);
  const auto p = kernels::inverse_power_sums_self(pts, 2.0, 3.0, Exec::parallel);
  EXPECT_EQ(s, p);
}

TEST(InversePowerSums, SelfSkipsDiagonal) {
  const std::vector<Point> pts = {{0.0, 0.0}, {0.5, 0.0}};
  const auto s = kernels::inverse_power_sums_self(pts, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(s[0], 4.0);
  EXPECT_DOUBLE_EQ(s[1], 4.0);
}

TEST(InversePowerSums, GuardThrowsInBothModes) {
  const std::vector<Point> pts = {{0.3, 0.3}, {0.3, 0.3}, {0.1, 0.9}};
  EXPECT_THROW(kernels::inverse_power_sums_self(pts, 1.0, 3.0, Exec::serial), NearFieldError);
  EXPECT_THROW(kernels::inverse_power_sums_self(pts, 1.0, 3.0, Exec::parallel), NearFieldError);
}

TEST(MinPairwise, SerialEqualsParallel) {
  const auto pts = sample_network(900, Regime::dense, 8).positions;
  EXPECT_EQ(kernels::min_pairwise_distance(pts, Exec::serial), kernels::min_pairwise_distance(pts, Exec::parallel));
}

TEST(RunTrials, DeterministicAcrossModes) {
  auto f = [](int, Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  const auto s = kernels::run_trials(64, 11, f, Exec::serial);
  const auto p = kernels::run_trials(64, 11, f, Exec::parallel);
  EXPECT_EQ(s, p);
  EXPECT_NE(s[0], s[1]);
}

TEST(RunTrials, PropagatesExceptions) {
  auto f = [](int t, Rng&) -> double {
    if (t == 5) throw std::runtime_error("boom");
    return 0.0;
  };
  EXPECT_THROW(kernels::run_trials(10, 1, f, Exec::parallel), std::runtime_error);
  EXPECT_THROW(kernels::run_trials(10, 1, f, Exec::serial), std::runtime_error);
}

TEST(Summarize, MeanAndStandardError) {
  const auto m = kernels::summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  // sample sd sqrt(5/3), se = sd / 2
  EXPECT_NEAR(m.std_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(m.trials, 4);
}
