#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "adhoc/params.hpp"

namespace adhoc {

struct VerifyConfig {
  std::uint64_t seed = 7;
  int trials = 0;  // 0: each suite's default count; otherwise overrides seeds and Monte Carlo draws
  ChannelParams params;
  std::vector<std::string> suites;  // empty: all
};

VerifyConfig verify_config_from_json(const nlohmann::json& j);

struct SuiteResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // positive when passing
  nlohmann::json details;
};

void to_json(nlohmann::json& j, const SuiteResult& r);

inline const std::vector<std::string> kSuiteNames = {"lemma3", "lemma4", "lemma7", "lemma8",
                                                     "lemma10", "column_norms", "trace_moments", "catalan"};

SuiteResult suite_lemma3(const VerifyConfig& c);
SuiteResult suite_lemma4(const VerifyConfig& c);
SuiteResult suite_lemma7(const VerifyConfig& c);
SuiteResult suite_lemma8(const VerifyConfig& c);
SuiteResult suite_lemma10(const VerifyConfig& c);
SuiteResult suite_column_norms(const VerifyConfig& c);
SuiteResult suite_trace_moments(const VerifyConfig& c);
SuiteResult suite_catalan(const VerifyConfig& c);

SuiteResult run_suite(const std::string& name, const VerifyConfig& c);
std::vector<SuiteResult> verify_lemmas(const VerifyConfig& c);
nlohmann::json verify_report(const std::vector<SuiteResult>& results);

// Wilson score interval for k successes out of n
std::pair<double, double> wilson_interval(int k, int n, double z = 1.96);

}  // namespace adhoc
