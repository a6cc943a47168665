#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "adhoc/net_model.hpp"
#include "adhoc/rng.hpp"

using namespace adhoc;

TEST(SampleNetwork, DenseInUnitSquare) {
  const auto inst = sample_network(500, Regime::dense, 3);
  EXPECT_EQ(inst.n, 500);
  EXPECT_DOUBLE_EQ(inst.side, 1.0);
  for (const auto& p : inst.positions) {
    EXPECT_GE(p.x, 0.0);
    EXPECT_LT(p.x, 1.0);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LT(p.y, 1.0);
  }
}

TEST(SampleNetwork, ExtendedSideIsSqrtN) {
  const auto inst = sample_network(400, Regime::extended, 3);
  EXPECT_DOUBLE_EQ(inst.side, 20.0);
  EXPECT_NEAR(inst.physical_distance(0, 1), 20.0 * std::sqrt(dist2(inst.positions[0], inst.positions[1])), 1e-12);
}

TEST(SampleNetwork, SameSeedSameGeometry) {
  const auto a = sample_network(100, Regime::dense, 42), b = sample_network(100, Regime::dense, 42);
  const auto c = sample_network(100, Regime::dense, 43);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.positions[i].x, b.positions[i].x);
    EXPECT_EQ(a.positions[i].y, b.positions[i].y);
  }
  EXPECT_NE(a.positions[0].x, c.positions[0].x);
}

TEST(SampleNetwork, RejectsTinyN) { EXPECT_THROW(sample_network(1, Regime::dense, 1), std::invalid_argument); }

TEST(SampleNetwork, MeanCoordinateNearHalf) {
  const auto inst = sample_network(20000, Regime::dense, 9);
  double sx = 0.0;
  for (const auto& p : inst.positions) sx += p.x;
  // standard error of the mean is sqrt(1/12 / n) ~ 0.002
  EXPECT_NEAR(sx / inst.n, 0.5, 0.01);
}

TEST(Pairing, RandomPairingIsDerangement) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = random_pairing(2 + static_cast<int>(s), s);
    EXPECT_TRUE(is_derangement(p));
  }
}

TEST(Pairing, ShiftPairing) {
  EXPECT_EQ(shift_pairing(4), (std::vector<int>{1, 2, 3, 0}));
  EXPECT_TRUE(is_derangement(shift_pairing(7)));
}

TEST(Pairing, DerangementCheck) {
  EXPECT_FALSE(is_derangement({0, 1}));
  EXPECT_FALSE(is_derangement({1, 1}));
  EXPECT_FALSE(is_derangement({1, 2}));
  EXPECT_TRUE(is_derangement({1, 0}));
}

TEST(ClusterGrid, FloorOfSqrtRatio) {
  const auto inst = sample_network(1024, Regime::dense, 1);
  EXPECT_EQ(build_cluster_grid(inst, 64).grid_dim, 4);
  const auto odd = sample_network(1000, Regime::dense, 1);
  EXPECT_EQ(build_cluster_grid(odd, 64).grid_dim, 3);  // sqrt(15.6) rounds down
  EXPECT_THROW(build_cluster_grid(inst, 2000), std::invalid_argument);
}

TEST(ClusterGrid, MembersAndHalvesPartitionNodes) {
  const auto inst = sample_network(777, Regime::extended, 5);
  const auto g = build_cluster_grid_dim(inst, 5);
  std::vector<int> all;
  for (int c = 0; c < g.num_cells(); ++c) {
    for (int i : g.members[c]) {
      EXPECT_EQ(g.cell_of[i], c);
      all.push_back(i);
    }
    for (int axis = 0; axis < 2; ++axis)
      EXPECT_EQ(g.halves[c][axis][0].size() + g.halves[c][axis][1].size(), g.members[c].size());
    for (int i : g.halves[c][0][0]) EXPECT_LT(inst.positions[i].x, g.center(c).x);
    for (int i : g.halves[c][1][1]) EXPECT_GE(inst.positions[i].y, g.center(c).y);
  }
  std::sort(all.begin(), all.end());
  for (int i = 0; i < inst.n; ++i) EXPECT_EQ(all[i], i);
  EXPECT_NEAR(g.cell_side, inst.side / 5, 1e-12);
  EXPECT_NEAR(g.cell_area, g.cell_side * g.cell_side, 1e-12);
}

TEST(ClusterGrid, NineColouring) {
  const auto inst = sample_network(16, Regime::dense, 1);
  const auto g = build_cluster_grid_dim(inst, 6);
  std::set<int> colours;
  for (int c = 0; c < g.num_cells(); ++c) {
    colours.insert(g.color(c));
    for (int d = 0; d < g.num_cells(); ++d)
      if (c != d && g.color(c) == g.color(d)) {
        EXPECT_GE(std::max(std::abs(g.cx(c) - g.cx(d)), std::abs(g.cy(c) - g.cy(d))), 3);
      }
  }
  EXPECT_EQ(colours.size(), 9u);
}

TEST(Occupancy, HandCounts) {
  // 2x2 grid with counts 3, 1, 0, 0 out of n = 4: expected 1 per cell
  const auto inst = instance_from_points({{0.1, 0.1}, {0.2, 0.3}, {0.4, 0.1}, {0.6, 0.2}}, {});
  const auto g = build_cluster_grid_dim(inst, 2);
  const auto s = cell_occupancy_stats(g, 4, 0.5);
  EXPECT_EQ(s.min_count, 0);
  EXPECT_EQ(s.max_count, 3);
  EXPECT_EQ(s.band_violations, 3);
  EXPECT_DOUBLE_EQ(s.expected, 1.0);
  EXPECT_EQ(s.half_min_count, 0);
}

TEST(Squarelets, CrossingCountMatchesBruteForce) {
  const auto inst = with_random_pairing(sample_network(2048, Regime::extended, 8), 8);
  int cross = 0;
  for (int s = 0; s < inst.n; ++s)
    if (inst.positions[s].x * inst.side < inst.side / 2 && inst.positions[inst.pairing[s]].x * inst.side >= inst.side / 2)
      ++cross;
  const auto q = squarelet_checks(inst);
  EXPECT_EQ(q.crossing_count, cross);
  EXPECT_GE(q.max_unit_occupancy, 1);
  EXPECT_THROW(squarelet_checks(sample_network(16, Regime::dense, 1)), std::invalid_argument);
}

TEST(MinDistance, MatchesBruteForce) {
  const auto inst = sample_network(300, Regime::extended, 12);
  double best = 1e300;
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j) best = std::min(best, inst.physical_distance(i, j));
  EXPECT_NEAR(min_pairwise_distance(inst), best, 1e-12 * best);
}

TEST(Instance, JsonRoundTrip) {
  const auto inst = with_random_pairing(sample_network(37, Regime::extended, 4), 4);
  const nlohmann::json j = inst;
  const auto back = j.get<NetworkInstance>();
  EXPECT_EQ(back.n, inst.n);
  EXPECT_EQ(back.regime, inst.regime);
  EXPECT_EQ(back.pairing, inst.pairing);
  for (int i = 0; i < inst.n; ++i) EXPECT_EQ(back.positions[i].x, inst.positions[i].x);
}

TEST(Instance, RescaledKeepsUnitGeometry) {
  const auto inst = sample_network(64, Regime::extended, 2);
  const auto d = rescaled_to_dense(inst);
  EXPECT_EQ(d.regime, Regime::dense);
  EXPECT_DOUBLE_EQ(d.side, 1.0);
  EXPECT_EQ(d.positions[5].y, inst.positions[5].y);
}

TEST(Seeds, CellSeedsSeparateSchemes) {
  EXPECT_NE(cell_seed(1, "hierarchical", 64, 3.0, 0), cell_seed(1, "tdma", 64, 3.0, 0));
  EXPECT_NE(cell_seed(1, "tdma", 64, 3.0, 0), cell_seed(1, "tdma", 64, 3.0, 1));
  EXPECT_EQ(cell_seed(9, "tdma", 128, 2.5, 3), cell_seed(9, "tdma", 128, 2.5, 3));
  EXPECT_NE(instance_seed(1, "dense", 64, 0), instance_seed(1, "extended", 64, 0));
}
