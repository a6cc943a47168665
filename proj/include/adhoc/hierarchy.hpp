#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "adhoc/net_model.hpp"
#include "adhoc/params.hpp"

namespace adhoc {

enum class AlphaMode { general, alpha2, automatic };

std::string to_string(AlphaMode m);
AlphaMode alpha_mode_from_string(const std::string& s);

struct SchemeConfig {
  int levels_h = 1;
  double L = 16.0;
  double C = 0.0;   // 0: ceil(L / kappa)
  double Q = 0.0;   // 0: quantizer_rate(P2, delta^2, epsilon)
  double K1 = 0.0;  // 0: measured from the lower level at every level
  AlphaMode alpha_mode = AlphaMode::automatic;
  double quantizer_epsilon = 0.1;
  double delta_sq = 0.0;  // 0: P2
  double occupancy_delta = 0.5;
  int mi_check_trials = 2;
  int mi_check_max_nodes = 512;
  std::uint64_t seed = 0;
};

// config with every derived constant filled in
struct ResolvedScheme {
  SchemeConfig config;
  AlphaMode mode = AlphaMode::general;
  double kappa = 0.0;  // per-antenna phase-2 rate from the PZ bound
  double p2 = 0.0;
  double delta_sq = 0.0;
};

ResolvedScheme resolve_scheme(const SchemeConfig& c, const ChannelParams& p);

double exponent_after_levels(int h);

struct ClusterSizing {
  double target = 0.0;  // n^{1/(2-b)}
  int grid_dim = 1;
  double size = 0.0;    // n / grid_dim^2
};

ClusterSizing optimal_cluster_size(double n, double b);

double simple_throughput(double n, double m, double b, double q);

struct PhaseDurations {
  double t1 = 0.0;
  double t2_per_source = 0.0;
  double t3 = 0.0;
};

PhaseDurations phase_durations(double m, double b, double L, double C, double Q, double K1, AlphaMode mode);

struct LevelReport {
  int depth = 0;          // 0 is the top level
  int levels_below = 0;   // h at this depth
  double b = 0.0;         // exponent of the scheme used inside clusters
  double mean_cluster_size = 0.0;
  double mean_grid_dim = 0.0;
  double k_mean = 0.0;
  double k_min = 0.0;
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;  // means over the calls at this depth
  double interference = 0.0;
  int calls = 0;
  int empty_cells = 0;
  int empty_halves = 0;
  int band_violations = 0;
};

struct ThroughputReport {
  int n = 0;
  std::string scheme;
  Regime regime = Regime::dense;
  int levels_h = 0;
  std::vector<double> M_per_level;
  std::vector<double> b_per_level;
  std::vector<LevelReport> levels;
  PhaseDurations top_durations;
  double top_t2_total = 0.0;
  double total_slots = 0.0;
  double total_bits = 0.0;
  double aggregate_rate = 0.0;
  double per_node_avg_power = 0.0;  // maximum over nodes
  std::vector<double> node_avg_power;
  bool phase2_power_ok = true;
  double duty_cycle = 1.0;
  bool failure = false;
  std::string failure_reason;
  std::vector<std::string> warnings;
  bool mi_checked = false;
  double mi_check_bits = 0.0;
  double mi_check_bound = 0.0;
  int sessions = 0;
  int neighbor_sessions = 0;
};

void to_json(nlohmann::json& j, const LevelReport& r);
void to_json(nlohmann::json& j, const ThroughputReport& r);

ThroughputReport run_hierarchical(const NetworkInstance& inst, const ChannelParams& p, const SchemeConfig& c);

struct PowerAudit {
  double max_avg_power = 0.0;
  double limit = 0.0;
  bool pass = false;
};

PowerAudit per_node_power_audit(const ThroughputReport& r, const ChannelParams& p, Regime regime);

ThroughputReport run_bursty_extended(const NetworkInstance& inst, const ChannelParams& p, const SchemeConfig& c);

ThroughputReport run_multihop_baseline(const NetworkInstance& inst, const ChannelParams& p);

double failure_rate(const SchemeConfig& c, const ChannelParams& p, int n, int seeds, std::uint64_t master);

}  // namespace adhoc
