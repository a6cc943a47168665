#include "adhoc/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "adhoc/channel.hpp"
#include "adhoc/mimo.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

std::string to_string(AlphaMode m) {
  switch (m) {
    case AlphaMode::general: return "general";
    case AlphaMode::alpha2: return "alpha2";
    default: return "auto";
  }
}

AlphaMode alpha_mode_from_string(const std::string& s) {
  if (s == "general") return AlphaMode::general;
  if (s == "alpha2") return AlphaMode::alpha2;
  if (s == "auto") return AlphaMode::automatic;
  throw std::invalid_argument("unknown alpha mode: " + s);
}

ResolvedScheme resolve_scheme(const SchemeConfig& c, const ChannelParams& p) {
  validate(p);
  if (c.levels_h < 0) throw std::invalid_argument("levels_h must be >= 0");
  if (!(c.L >= 0.0)) throw std::invalid_argument("L must be >= 0");
  ResolvedScheme r;
  r.config = c;
  r.mode = c.alpha_mode == AlphaMode::automatic ? (p.alpha == 2.0 ? AlphaMode::alpha2 : AlphaMode::general)
                                                 : c.alpha_mode;
  r.p2 = received_power_bounds(p).p2;
  r.delta_sq = c.delta_sq > 0.0 ? c.delta_sq : r.p2;
  r.kappa = pz_per_antenna_rate(p.alpha, p.G * p.P / (p.N0 + r.delta_sq));
  if (r.config.C <= 0.0) r.config.C = std::max(1.0, std::ceil(c.L / r.kappa));
  if (r.config.Q <= 0.0) r.config.Q = quantizer_rate(r.p2, r.delta_sq, c.quantizer_epsilon);
  if (c.L > 0.0 && c.L / r.config.C > r.kappa * (1 + 1e-12))
    throw std::invalid_argument("L/C exceeds the phase-2 per-antenna rate");
  return r;
}

double exponent_after_levels(int h) {
  if (h < 0) throw std::invalid_argument("h must be >= 0");
  return static_cast<double>(h) / (h + 1);
}

namespace {

int closest_grid_dim(double n, double target) {
  const double gr = std::sqrt(n / target);
  const int lo = std::max(1, static_cast<int>(std::floor(gr)));
  const int hi = lo + 1;
  int g = std::abs(std::log(hi) - std::log(gr)) < std::abs(std::log(gr) - std::log(lo)) ? hi : lo;
  while (g > 1 && static_cast<double>(g) * g > n) --g;
  return g;
}

}  // namespace

ClusterSizing optimal_cluster_size(double n, double b) {
  if (!(b >= 0.0 && b < 1.0)) throw std::invalid_argument("b must lie in [0, 1)");
  ClusterSizing s;
  s.target = std::pow(n, 1.0 / (2.0 - b));
  s.grid_dim = closest_grid_dim(n, s.target);
  s.size = n / (static_cast<double>(s.grid_dim) * s.grid_dim);
  return s;
}

double simple_throughput(double n, double m, double b, double q) {
  if (m > n) throw std::invalid_argument("cluster size exceeds n");
  const double mb = std::pow(m, 2.0 - b);
  return n * m / (mb + n + q * mb);
}

PhaseDurations phase_durations(double m, double b, double L, double C, double Q, double K1, AlphaMode mode) {
  PhaseDurations d;
  const double mb = std::pow(m, 2.0 - b);
  d.t1 = 18.0 * L / K1 * mb;
  d.t2_per_source = 2.0 * C;
  d.t3 = 18.0 * C * Q / K1 * mb;
  if (mode == AlphaMode::alpha2) {
    // the log-corrected schedule only lengthens phases; below M = e the factor is held at 1
    const double lm = std::max(1.0, std::log(m));
    d.t1 *= lm;
    d.t2_per_source *= lm;
    d.t3 *= lm * lm;
  }
  return d;
}

namespace {

struct DepthStats {
  double size_sum = 0, grid_sum = 0, k_sum = 0, k_min = 1e300, t1 = 0, t2 = 0, t3 = 0, interference = 0;
  int calls = 0, k_calls = 0, empty_cells = 0, empty_halves = 0, band = 0;
};

struct Ctx {
  const ChannelParams* p;
  const ResolvedScheme* s;
  std::vector<DepthStats> depth;
  bool failure = false;
  std::string reason;
  bool phase2_ok = true;
  ThroughputReport* top = nullptr;
};

struct LevelOut {
  double rate = 0.0;
  std::vector<double> avg_power;  // per local node, budget P
};

void fail(Ctx& ctx, const std::string& why) {
  if (!ctx.failure) ctx.reason = why;
  ctx.failure = true;
}

LevelOut run_tdma(const std::vector<Point>& pts, const std::vector<int>& pairing, Ctx& ctx, double extra) {
  const auto& p = *ctx.p;
  const int m = static_cast<int>(pts.size());
  LevelOut out;
  out.avg_power.assign(m, p.P / m);
  double sum = 0.0;
  for (int s = 0; s < m; ++s) {
    const double r = std::sqrt(dist2(pts[s], pts[pairing[s]]));
    check_far_field(r, 1.0);
    sum += std::log2(1.0 + gain(p, r) * p.P / (p.N0 + extra));
  }
  out.rate = sum / m;
  return out;
}

LevelOut run_level(const std::vector<Point>& pts, const std::vector<int>& pairing, int h, int depth, Ctx& ctx,
                   double extra) {
  const int m = static_cast<int>(pts.size());
  if (h == 0) return run_tdma(pts, pairing, ctx, extra);

  const auto& p = *ctx.p;
  const auto& sc = *ctx.s;
  const auto& cfg = sc.config;
  const double b = exponent_after_levels(h - 1);
  const int g = closest_grid_dim(m, std::pow(static_cast<double>(m), 1.0 / (2.0 - b)));
  NetworkInstance local = instance_from_points(pts, pairing);
  const ClusterGrid grid = build_cluster_grid_dim(local, g);
  const double cells = static_cast<double>(g) * g;
  const double M = m / cells;
  const OccupancyStats occ = cell_occupancy_stats(grid, m, cfg.occupancy_delta);

  auto& ds = ctx.depth[depth];
  ds.calls++;
  ds.size_sum += M;
  ds.grid_sum += g;
  ds.band += occ.band_violations;
  for (int c = 0; c < grid.num_cells(); ++c) {
    if (grid.members[c].empty()) ds.empty_cells++;
    for (const auto& ax : grid.halves[c])
      for (const auto& hv : ax)
        if (hv.empty()) ds.empty_halves++;
  }
  if (occ.min_count == 0) fail(ctx, "empty cluster at depth " + std::to_string(depth));
  else if (occ.half_min_count == 0) fail(ctx, "empty half-cluster at depth " + std::to_string(depth));

  // the schedule budgets the closed-form interference floor at every level, even when g <= 3
  const double interference = interference_bound(p, p.P, static_cast<long>(cells));
  ds.interference += interference;

  // phase 1/3 building block: the lower scheme inside every cluster, on the rescaled cluster
  std::vector<double> low_power(m, 0.0);
  std::vector<double> ks;
  for (int c = 0; c < grid.num_cells(); ++c) {
    const auto& mem = grid.members[c];
    if (mem.size() < 2) continue;
    std::vector<Point> sub;
    sub.reserve(mem.size());
    const double x0 = static_cast<double>(grid.cx(c)) / g, y0 = static_cast<double>(grid.cy(c)) / g;
    for (int i : mem) sub.push_back({(pts[i].x - x0) * g, (pts[i].y - y0) * g});
    const LevelOut lo = run_level(sub, shift_pairing(static_cast<int>(mem.size())), h - 1, depth + 1, ctx,
                                  extra + interference);
    ks.push_back(lo.rate / std::pow(static_cast<double>(mem.size()), b));
    for (std::size_t j = 0; j < mem.size(); ++j) low_power[mem[j]] = lo.avg_power[j];
  }
  if (ks.empty()) {
    fail(ctx, "no cluster can host the lower scheme at depth " + std::to_string(depth));
    return LevelOut{0.0, std::vector<double>(m, 0.0)};
  }
  const double k_mean = std::accumulate(ks.begin(), ks.end(), 0.0) / ks.size();
  ds.k_sum += k_mean;
  ds.k_calls++;
  ds.k_min = std::min(ds.k_min, *std::min_element(ks.begin(), ks.end()));
  const double K = cfg.K1 > 0.0 ? cfg.K1 : k_mean;

  const PhaseDurations d = phase_durations(M, b, cfg.L, cfg.C, cfg.Q, K, sc.mode);

  // phase 2: one MIMO session per source whose destination sits in another cluster
  const double lm = sc.mode == AlphaMode::alpha2 ? std::max(1.0, std::log(M)) : 1.0;
  std::vector<double> e2(m, 0.0), rmax(m, 0.0);
  std::vector<int> sess_from(grid.num_cells(), 0);
  int sessions = 0, neighbor = 0;
  const MimoSession* checked = nullptr;
  MimoSession check_session;
  for (int s = 0; s < m; ++s) {
    const int cs = grid.cell_of[s], cd = grid.cell_of[pairing[s]];
    if (cs == cd) continue;
    const MimoSession ses = build_mimo_session(local, grid, cs, cd, p);
    ++sessions;
    ++sess_from[cs];
    if (ses.neighbor_mode) ++neighbor;
    const double slots = (ses.neighbor_mode ? 2.0 : 1.0) * cfg.C * lm;
    const double rpow = std::pow(ses.r_sd, p.alpha);
    for (int k : ses.tx_nodes) {
      e2[k] += ses.per_node_power * slots;
      rmax[k] = std::max(rmax[k], rpow);
    }
    if (depth == 0 && !checked && !ses.neighbor_mode && !ses.tx_nodes.empty() && !ses.rx_nodes.empty() &&
        static_cast<int>(ses.tx_nodes.size()) <= cfg.mi_check_max_nodes &&
        static_cast<int>(ses.rx_nodes.size()) <= cfg.mi_check_max_nodes) {
      check_session = ses;
      checked = &check_session;
    }
  }
  const double t2 = d.t2_per_source * sessions;
  const double total = d.t1 + t2 + d.t3;
  ds.t1 += d.t1;
  ds.t2 += t2;
  ds.t3 += d.t3;

  LevelOut out;
  out.rate = total > 0.0 ? m * M * cfg.L / total : 0.0;
  out.avg_power.assign(m, 0.0);
  const double scale = std::pow(1.0 / cells, p.alpha / 2);  // A_c^{alpha/2} in this level's unit square
  const double t2_eff = sessions > 0 ? t2 : 1.0;
  for (int i = 0; i < m; ++i) {
    const double e13 = (d.t1 + d.t3) / 9.0 * scale * low_power[i];
    if (total > 0.0) out.avg_power[i] = (e13 + e2[i]) / total;
    if (sessions > 0) {
      // per-node phase-2 average against P r_sd^alpha (sessions from the cluster) / (|cluster| sessions)
      const int c = grid.cell_of[i];
      const double bound = p.P * rmax[i] * sess_from[c] /
                           (static_cast<double>(grid.members[c].size()) * sessions);
      if (e2[i] / t2_eff > bound * (1 + 1e-12)) ctx.phase2_ok = false;
    }
  }

  if (depth == 0 && ctx.top) {
    auto& r = *ctx.top;
    r.top_durations = d;
    r.top_t2_total = t2;
    r.total_slots = total;
    r.total_bits = m * M * cfg.L;
    r.sessions = sessions;
    r.neighbor_sessions = neighbor;
    if (checked) {
      const ChannelMatrix hm = sample_channel_matrix(p, local, checked->tx_nodes, checked->rx_nodes,
                                                     mix(cfg.seed, std::string_view("mi-check")));
      const QuantizerSpec q{sc.delta_sq, cfg.Q};
      const auto mi = quantized_mutual_information(hm, checked->per_node_power, p.N0 + extra, q,
                                                   cfg.mi_check_trials, mix(cfg.seed, std::string_view("mi")));
      const double antennas = static_cast<double>(std::min(checked->tx_nodes.size(), checked->rx_nodes.size()));
      r.mi_checked = true;
      r.mi_check_bits = mi.mean;
      r.mi_check_bound = sc.kappa * antennas;
      if (mi.mean < r.mi_check_bound)
        r.warnings.push_back("numeric-warning: phase-2 session MI below the per-antenna bound");
    } else {
      r.warnings.push_back("phase-2 MI cross-check skipped (no eligible session)");
    }
  }
  return out;
}

}  // namespace

ThroughputReport run_hierarchical(const NetworkInstance& inst, const ChannelParams& p, const SchemeConfig& c) {
  if (!is_derangement(inst.pairing)) throw std::invalid_argument("instance pairing must be a derangement");
  const ResolvedScheme rs = resolve_scheme(c, p);
  ThroughputReport r;
  r.n = inst.n;
  r.scheme = c.levels_h == 0 ? "tdma" : "hierarchical";
  r.regime = Regime::dense;
  r.levels_h = c.levels_h;
  for (int j = 0; j <= c.levels_h; ++j) r.b_per_level.push_back(exponent_after_levels(j));

  // nominal cluster sizes along the recursion
  double size = inst.n;
  for (int h = c.levels_h; h >= 1; --h) {
    const int g = closest_grid_dim(size, std::pow(size, 1.0 / (2.0 - exponent_after_levels(h - 1))));
    size = size / (static_cast<double>(g) * g);
    r.M_per_level.push_back(size);
  }

  Ctx ctx{&p, &rs, std::vector<DepthStats>(c.levels_h + 1), false, {}, true, &r};
  NetworkInstance dense = inst.regime == Regime::dense ? inst : rescaled_to_dense(inst);
  const LevelOut top = run_level(dense.positions, dense.pairing, c.levels_h, 0, ctx, 0.0);
  r.aggregate_rate = top.rate;
  if (c.levels_h == 0) {
    r.total_slots = inst.n;
    r.total_bits = top.rate * inst.n;
  }
  r.node_avg_power = top.avg_power;
  r.per_node_avg_power = *std::max_element(top.avg_power.begin(), top.avg_power.end());
  r.phase2_power_ok = ctx.phase2_ok;
  r.failure = ctx.failure;
  r.failure_reason = ctx.reason;

  for (int d = 0; d < c.levels_h; ++d) {
    const auto& s = ctx.depth[d];
    LevelReport lr;
    lr.depth = d;
    lr.levels_below = c.levels_h - d;
    lr.b = exponent_after_levels(c.levels_h - d - 1);
    lr.calls = s.calls;
    if (s.calls > 0) {
      lr.mean_cluster_size = s.size_sum / s.calls;
      lr.mean_grid_dim = s.grid_sum / s.calls;
      lr.t1 = s.t1 / s.calls;
      lr.t2 = s.t2 / s.calls;
      lr.t3 = s.t3 / s.calls;
      lr.interference = s.interference / s.calls;
    }
    if (s.k_calls > 0) {
      lr.k_mean = s.k_sum / s.k_calls;
      lr.k_min = s.k_min;
    }
    lr.empty_cells = s.empty_cells;
    lr.empty_halves = s.empty_halves;
    lr.band_violations = s.band;
    if (s.band > 0 && d == 0)
      r.warnings.push_back("occupancy band violated in " + std::to_string(s.band) + " top-level clusters");
    r.levels.push_back(lr);
  }
  return r;
}

PowerAudit per_node_power_audit(const ThroughputReport& r, const ChannelParams& p, Regime regime) {
  PowerAudit a;
  for (double v : r.node_avg_power) a.max_avg_power = std::max(a.max_avg_power, v);
  a.limit = regime == Regime::dense ? p.P / r.n : p.P;
  a.pass = a.max_avg_power <= a.limit * (1 + 1e-12) && r.phase2_power_ok;
  return a;
}

ThroughputReport run_bursty_extended(const NetworkInstance& inst, const ChannelParams& p, const SchemeConfig& c) {
  if (inst.regime != Regime::extended) throw std::invalid_argument("bursty scheme needs an extended network");
  ThroughputReport r = run_hierarchical(rescaled_to_dense(inst), p, c);
  const double n = inst.n;
  r.scheme = "bursty";
  r.regime = Regime::extended;
  r.duty_cycle = std::pow(n, 1.0 - p.alpha / 2);
  r.aggregate_rate *= r.duty_cycle;
  // physical power: dense-equivalent power times n^{alpha/2}, active a duty-cycle fraction of the time
  const double conv = r.duty_cycle * std::pow(n, p.alpha / 2);
  for (double& v : r.node_avg_power) v *= conv;
  r.per_node_avg_power *= conv;
  return r;
}

ThroughputReport run_multihop_baseline(const NetworkInstance& inst, const ChannelParams& p) {
  if (inst.regime != Regime::extended) throw std::invalid_argument("multihop baseline needs an extended network");
  validate(p);
  ThroughputReport r;
  r.n = inst.n;
  r.scheme = "multihop";
  r.regime = Regime::extended;
  const double n = inst.n;
  const int g = std::max(1, static_cast<int>(std::floor(inst.side / std::sqrt(2.0 * std::log(n)))));
  const double s = inst.side / g;
  r.M_per_level.push_back(n / (static_cast<double>(g) * g));

  const NetworkInstance& in = inst;
  const ClusterGrid grid = build_cluster_grid_dim(in, g);
  for (int c = 0; c < grid.num_cells(); ++c)
    if (grid.members[c].empty()) {
      r.failure = true;
      r.failure_reason = "empty relay squarelet";
      break;
    }

  std::vector<long> load(grid.num_cells(), 0);
  long flows = 0;
  for (int src = 0; src < inst.n; ++src) {
    const int dst = inst.pairing[src];
    if (dst == src) continue;
    ++flows;
    const int a = grid.cell_of[src], b = grid.cell_of[dst];
    int x = grid.cx(a), y = grid.cy(a);
    const int bx = grid.cx(b), by = grid.cy(b);
    ++load[grid.cell_index(x, y)];
    while (x != bx) {
      x += bx > x ? 1 : -1;
      ++load[grid.cell_index(x, y)];
    }
    while (y != by) {
      y += by > y ? 1 : -1;
      ++load[grid.cell_index(x, y)];
    }
  }
  const long max_load = *std::max_element(load.begin(), load.end());

  const double dmax = std::sqrt(5.0) * s;
  const double snr = gain(p, dmax) * p.P / p.N0;
  double interference = 0.0;
  if (g > 3)
    for (int i = (g + 2) / 3; i >= 1; --i) interference += 8.0 * i * gain(p, (3.0 * i - 2.0) * s) * p.P;
  const double hop_rate = std::log2(1.0 + snr / (1.0 + interference / p.N0));
  const double slots = 9.0 * static_cast<double>(max_load);
  r.total_slots = slots;
  r.total_bits = flows * hop_rate;
  r.aggregate_rate = max_load > 0 ? flows * hop_rate / slots : 0.0;
  r.sessions = static_cast<int>(flows);

  // one relay per squarelet transmits its load at full power
  r.node_avg_power.assign(inst.n, 0.0);
  for (int c = 0; c < grid.num_cells(); ++c)
    if (!grid.members[c].empty() && max_load > 0)
      r.node_avg_power[grid.members[c].front()] = p.P * load[c] / slots;
  r.per_node_avg_power = *std::max_element(r.node_avg_power.begin(), r.node_avg_power.end());
  return r;
}

double failure_rate(const SchemeConfig& c, const ChannelParams& p, int n, int seeds, std::uint64_t master) {
  if (seeds < 30) throw std::invalid_argument("failure rate needs at least 30 seeds");
  int failures = 0;
  for (int t = 0; t < seeds; ++t) {
    const std::uint64_t s = instance_seed(master, "dense", n, t);
    const NetworkInstance inst = with_random_pairing(sample_network(n, Regime::dense, s), s);
    SchemeConfig cc = c;
    cc.mi_check_trials = 1;
    cc.mi_check_max_nodes = 0;
    if (run_hierarchical(inst, p, cc).failure) ++failures;
  }
  return static_cast<double>(failures) / seeds;
}

void to_json(nlohmann::json& j, const LevelReport& r) {
  j = {{"depth", r.depth},
       {"levels_below", r.levels_below},
       {"b", r.b},
       {"mean_cluster_size", r.mean_cluster_size},
       {"mean_grid_dim", r.mean_grid_dim},
       {"k_mean", r.k_mean},
       {"k_min", r.k_min},
       {"t1", r.t1},
       {"t2", r.t2},
       {"t3", r.t3},
       {"interference", r.interference},
       {"calls", r.calls},
       {"empty_cells", r.empty_cells},
       {"empty_halves", r.empty_halves},
       {"band_violations", r.band_violations}};
}

void to_json(nlohmann::json& j, const ThroughputReport& r) {
  j = {{"n", r.n},
       {"scheme", r.scheme},
       {"regime", to_string(r.regime)},
       {"levels_h", r.levels_h},
       {"M_per_level", r.M_per_level},
       {"b_per_level", r.b_per_level},
       {"levels", r.levels},
       {"phase_durations", {{"t1", r.top_durations.t1}, {"t2", r.top_t2_total}, {"t3", r.top_durations.t3}}},
       {"total_slots", r.total_slots},
       {"total_bits", r.total_bits},
       {"aggregate_rate", r.aggregate_rate},
       {"per_node_avg_power", r.per_node_avg_power},
       {"duty_cycle", r.duty_cycle},
       {"failure", {{"flag", r.failure}, {"reason", r.failure_reason}}},
       {"warnings", r.warnings},
       {"mi_check", {{"performed", r.mi_checked}, {"bits", r.mi_check_bits}, {"bound", r.mi_check_bound}}},
       {"sessions", r.sessions},
       {"neighbor_sessions", r.neighbor_sessions}};
}

}  // namespace adhoc
