#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adhoc/hierarchy.hpp"
#include "adhoc/params.hpp"

namespace adhoc {

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double stderr_slope = 0.0;
  std::optional<double> log_correction_power;
};

// least squares of log(value / (log n)^power) on log n
ExponentFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points,
                                 std::optional<double> correct_logs = std::nullopt);

struct LogPowerFit {
  double slope = 0.0;
  double log_power = 0.0;
  double intercept = 0.0;
};

// log value = c + slope log n + log_power log log n
LogPowerFit fit_with_log_power(const std::vector<std::pair<double, double>>& points);

void to_json(nlohmann::json& j, const ExponentFit& f);

inline const std::vector<std::string> kSchemes = {"hierarchical", "bursty", "multihop", "tdma", "cutset", "dense_bound"};
inline constexpr const char* kCsvHeader = "scheme,n,alpha,h,seed,rate,duty_cycle,failure,p_tot,bound,runtime_ms";
inline constexpr int kSummarySchemaVersion = 1;

struct SweepConfig {
  std::vector<int> n_list = {64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<double> alpha_list = {3.0};
  std::vector<std::string> schemes = {"hierarchical"};
  int levels_h = 1;
  int trials = 1;
  std::uint64_t seed = 1;
  std::string output_path = "sweep_out";
  int workers = 1;
  double epsilon = 0.05;
  bool record_runtime = false;
  ChannelParams params;  // alpha is overridden per cell
  SchemeConfig scheme;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
void validate(const SweepConfig& c);

std::string regime_of_scheme(const std::string& scheme);

struct SweepRow {
  std::string scheme;
  int n = 0;
  double alpha = 0.0;
  int h = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> rate;
  std::optional<double> duty_cycle;
  bool failure = false;
  std::optional<double> p_tot;
  std::optional<double> bound;
  double runtime_ms = 0.0;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  nlohmann::json summary;
  bool any_error = false;
};

SweepRow run_cell(const SweepConfig& c, const std::string& scheme, int n, double alpha, int trial);
SweepResult run_sweep(const SweepConfig& c);
std::string sweep_csv(const SweepResult& r);
// writes sweep.csv and summary.json under dir
void write_sweep_outputs(const SweepResult& r, const std::string& dir);

}  // namespace adhoc
