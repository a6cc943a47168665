#include "adhoc/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "adhoc/kernels.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

std::string to_string(Regime r) { return r == Regime::dense ? "dense" : "extended"; }

Regime regime_from_string(const std::string& s) {
  if (s == "dense") return Regime::dense;
  if (s == "extended") return Regime::extended;
  throw std::invalid_argument("unknown regime: " + s);
}

double NetworkInstance::physical_distance(int i, int j) const {
  return side * std::sqrt(dist2(positions[i], positions[j]));
}

NetworkInstance sample_network(int n, Regime regime, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("network needs at least 2 nodes");
  NetworkInstance inst;
  inst.n = n;
  inst.regime = regime;
  inst.side = regime == Regime::dense ? 1.0 : std::sqrt(static_cast<double>(n));
  inst.seed = seed;
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  inst.positions.resize(n);
  for (auto& p : inst.positions) {
    p.x = u(rng);
    p.y = u(rng);
  }
  inst.pairing.resize(n);
  std::iota(inst.pairing.begin(), inst.pairing.end(), 0);
  return inst;
}

std::vector<int> random_pairing(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("pairing needs at least 2 nodes");
  Rng rng = make_rng(mix(seed, std::string_view("pairing")));
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::uniform_int_distribution<int> pick(0, n - 2);
  for (int i = 0; i < n; ++i) {
    if (p[i] != i) continue;
    int j = pick(rng);
    if (j >= i) ++j;
    std::swap(p[i], p[j]);
  }
  return p;
}

NetworkInstance with_random_pairing(NetworkInstance inst, std::uint64_t seed) {
  inst.pairing = random_pairing(inst.n, seed);
  return inst;
}

std::vector<int> shift_pairing(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

bool is_derangement(const std::vector<int>& pairing) {
  const int n = static_cast<int>(pairing.size());
  std::vector<char> seen(n, 0);
  for (int i = 0; i < n; ++i) {
    const int d = pairing[i];
    if (d < 0 || d >= n || d == i || seen[d]) return false;
    seen[d] = 1;
  }
  return true;
}

NetworkInstance rescaled_to_dense(const NetworkInstance& inst) {
  NetworkInstance out = inst;
  out.regime = Regime::dense;
  out.side = 1.0;
  return out;
}

NetworkInstance instance_from_points(std::vector<Point> unit_positions, std::vector<int> pairing,
                                     Regime regime) {
  NetworkInstance inst;
  inst.n = static_cast<int>(unit_positions.size());
  inst.regime = regime;
  inst.side = regime == Regime::dense ? 1.0 : std::sqrt(static_cast<double>(inst.n));
  inst.positions = std::move(unit_positions);
  if (pairing.empty()) {
    pairing.resize(inst.n);
    std::iota(pairing.begin(), pairing.end(), 0);
  }
  if (static_cast<int>(pairing.size()) != inst.n) throw std::invalid_argument("pairing size mismatch");
  inst.pairing = std::move(pairing);
  return inst;
}

Point ClusterGrid::center(int c) const {
  const double w = 1.0 / grid_dim;
  return {(cx(c) + 0.5) * w, (cy(c) + 0.5) * w};
}

namespace {

int cell_coord(double u, int g) {
  int c = static_cast<int>(u * g);
  return std::clamp(c, 0, g - 1);
}

}  // namespace

ClusterGrid build_cluster_grid_dim(const NetworkInstance& inst, int g) {
  if (g < 1) throw std::invalid_argument("grid dimension must be positive");
  ClusterGrid grid;
  grid.grid_dim = g;
  grid.cell_side = inst.side / g;
  grid.cell_area = grid.cell_side * grid.cell_side;
  grid.members.assign(g * g, {});
  grid.halves.assign(g * g, {});
  grid.cell_of.assign(inst.n, 0);
  for (int i = 0; i < inst.n; ++i) {
    const Point p = inst.positions[i];
    const int cx = cell_coord(p.x, g), cy = cell_coord(p.y, g);
    const int c = grid.cell_index(cx, cy);
    grid.cell_of[i] = c;
    grid.members[c].push_back(i);
    // half membership from the position inside the cell
    const double fx = p.x * g - cx, fy = p.y * g - cy;
    grid.halves[c][0][fx < 0.5 ? 0 : 1].push_back(i);
    grid.halves[c][1][fy < 0.5 ? 0 : 1].push_back(i);
  }
  return grid;
}

ClusterGrid build_cluster_grid(const NetworkInstance& inst, double m) {
  if (m > inst.n) throw std::invalid_argument("cluster size exceeds n");
  if (!(m >= 1.0)) throw std::invalid_argument("cluster size must be >= 1");
  const int g = std::max(1, static_cast<int>(std::floor(std::sqrt(inst.n / m) + 1e-9)));
  return build_cluster_grid_dim(inst, g);
}

OccupancyStats cell_occupancy_stats(const ClusterGrid& grid, int n, double delta) {
  OccupancyStats s;
  s.delta = delta;
  s.expected = static_cast<double>(n) / grid.num_cells();
  s.min_count = n;
  s.max_count = 0;
  s.half_min_count = n;
  for (int c = 0; c < grid.num_cells(); ++c) {
    const int k = static_cast<int>(grid.members[c].size());
    s.min_count = std::min(s.min_count, k);
    s.max_count = std::max(s.max_count, k);
    if (!(k > (1 - delta) * s.expected && k < (1 + delta) * s.expected)) ++s.band_violations;
    for (const auto& axis : grid.halves[c])
      for (const auto& h : axis) s.half_min_count = std::min(s.half_min_count, static_cast<int>(h.size()));
  }
  return s;
}

SquareletChecks squarelet_checks(const NetworkInstance& inst) {
  if (inst.regime != Regime::extended) throw std::invalid_argument("squarelet checks need an extended network");
  SquareletChecks out;
  const double n = inst.n;

  const int g1 = std::max(1, static_cast<int>(std::floor(inst.side)));
  std::vector<int> unit(g1 * g1, 0);
  for (const auto& p : inst.positions) ++unit[cell_coord(p.x, g1) * g1 + cell_coord(p.y, g1)];
  out.max_unit_occupancy = *std::max_element(unit.begin(), unit.end());

  const int g2 = std::max(1, static_cast<int>(std::floor(inst.side / std::sqrt(2.0 * std::log(n)))));
  std::vector<int> sq(g2 * g2, 0);
  for (const auto& p : inst.positions) ++sq[cell_coord(p.x, g2) * g2 + cell_coord(p.y, g2)];
  out.empty_2logn = static_cast<int>(std::count(sq.begin(), sq.end(), 0));
  out.all_2logn_occupied = out.empty_2logn == 0;

  for (int s = 0; s < inst.n; ++s) {
    const int d = inst.pairing[s];
    if (d != s && inst.positions[s].x < 0.5 && inst.positions[d].x >= 0.5) ++out.crossing_count;
  }
  return out;
}

double min_pairwise_distance(const NetworkInstance& inst) {
  return inst.side * kernels::min_pairwise_distance(inst.positions);
}

void to_json(nlohmann::json& j, const NetworkInstance& inst) {
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : inst.positions) pos.push_back({p.x, p.y});
  j = nlohmann::json{{"n", inst.n},           {"regime", to_string(inst.regime)},
                     {"side", inst.side},     {"positions", pos},
                     {"pairing", inst.pairing}, {"seed", inst.seed}};
}

void from_json(const nlohmann::json& j, NetworkInstance& inst) {
  inst.n = j.at("n").get<int>();
  inst.regime = regime_from_string(j.at("regime").get<std::string>());
  inst.side = j.at("side").get<double>();
  inst.seed = j.value("seed", std::uint64_t{0});
  inst.positions.clear();
  for (const auto& p : j.at("positions")) inst.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  inst.pairing = j.at("pairing").get<std::vector<int>>();
  if (static_cast<int>(inst.positions.size()) != inst.n || static_cast<int>(inst.pairing.size()) != inst.n)
    throw std::invalid_argument("instance record sizes do not match n");
}

}  // namespace adhoc
