#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace adhoc {

enum class Regime { dense, extended };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(Point a, Point b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Positions live in unit coordinates; physical coordinates are position * side.
struct NetworkInstance {
  int n = 0;
  Regime regime = Regime::dense;
  double side = 1.0;
  std::vector<Point> positions;
  std::vector<int> pairing;  // pairing[s] = destination of source s, 0-based
  std::uint64_t seed = 0;

  double physical_distance(int i, int j) const;
};

NetworkInstance sample_network(int n, Regime regime, std::uint64_t seed);

// uniform permutation with each fixed point swapped against a random other index
std::vector<int> random_pairing(int n, std::uint64_t seed);
NetworkInstance with_random_pairing(NetworkInstance inst, std::uint64_t seed);

// pairing s -> s+1 mod n, used as the sub-network traffic pattern
std::vector<int> shift_pairing(int n);

bool is_derangement(const std::vector<int>& pairing);

// same unit geometry and pairing in the unit square
NetworkInstance rescaled_to_dense(const NetworkInstance& inst);

NetworkInstance instance_from_points(std::vector<Point> unit_positions, std::vector<int> pairing,
                                     Regime regime = Regime::dense);

enum class Axis { x = 0, y = 1 };

struct ClusterGrid {
  int grid_dim = 1;        // cells per axis
  double cell_area = 1.0;  // physical area A_c
  double cell_side = 1.0;  // physical side
  std::vector<std::vector<int>> members;
  // halves[c][axis][0] lower half, [1] upper half along that axis
  std::vector<std::array<std::array<std::vector<int>, 2>, 2>> halves;
  std::vector<int> cell_of;

  int num_cells() const { return grid_dim * grid_dim; }
  int cell_index(int cx, int cy) const { return cx * grid_dim + cy; }
  int cx(int c) const { return c / grid_dim; }
  int cy(int c) const { return c % grid_dim; }
  int color(int c) const { return (cx(c) % 3) * 3 + cy(c) % 3; }
  // center of cell c in unit coordinates
  Point center(int c) const;
};

// g = floor(sqrt(n / M)); cells are enlarged when n/M is not a perfect square
ClusterGrid build_cluster_grid(const NetworkInstance& inst, double target_cluster_size);
ClusterGrid build_cluster_grid_dim(const NetworkInstance& inst, int grid_dim);

struct OccupancyStats {
  int min_count = 0;
  int max_count = 0;
  int half_min_count = 0;
  int band_violations = 0;  // cells outside ((1-d)M, (1+d)M)
  double expected = 0.0;
  double delta = 0.5;
};

OccupancyStats cell_occupancy_stats(const ClusterGrid& grid, int n, double delta = 0.5);

struct SquareletChecks {
  int max_unit_occupancy = 0;        // over the unit-area squarelets
  bool all_2logn_occupied = false;   // every squarelet of area 2 log n holds a node
  int empty_2logn = 0;
  int crossing_count = 0;            // pairs with source left and destination right of the median
};

// extended-network checks; expects an extended instance
SquareletChecks squarelet_checks(const NetworkInstance& inst);

double min_pairwise_distance(const NetworkInstance& inst);

void to_json(nlohmann::json& j, const NetworkInstance& inst);
void from_json(const nlohmann::json& j, NetworkInstance& inst);

}  // namespace adhoc
