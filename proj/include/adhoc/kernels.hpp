#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <vector>

#include "adhoc/net_model.hpp"
#include "adhoc/rng.hpp"

namespace adhoc::kernels {

// serial is the reference; parallel must agree with it bit for bit where noted
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);
void set_workers(int workers);

// out[i] = sum_j (scale |a_i - b_j|)^{-alpha}; throws NearFieldError below the guard
std::vector<double> inverse_power_sums(const std::vector<Point>& a, const std::vector<Point>& b,
                                       double scale, double alpha, Exec exec = default_exec());

// out[i] = sum_{j != i} (scale |p_i - p_j|)^{-alpha}
std::vector<double> inverse_power_sums_self(const std::vector<Point>& pts, double scale, double alpha,
                                            Exec exec = default_exec());

double min_pairwise_distance(const std::vector<Point>& pts, Exec exec = default_exec());

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

MeanEstimate summarize(const std::vector<double>& samples);

// Runs f(trial, rng) for each trial with rng seeded from (seed, trial). Results are reduced in
// trial order, so serial and parallel runs give identical estimates.
template <class F>
std::vector<double> run_trials(int trials, std::uint64_t seed, F&& f, Exec exec = default_exec()) {
  std::vector<double> out(static_cast<std::size_t>(trials));
  if (exec == Exec::parallel) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
      try {
        Rng rng = make_rng(mix(seed, static_cast<std::uint64_t>(t)));
        out[t] = f(t, rng);
      } catch (...) {
#pragma omp critical(adhoc_trial_error)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (int t = 0; t < trials; ++t) {
      Rng rng = make_rng(mix(seed, static_cast<std::uint64_t>(t)));
      out[t] = f(t, rng);
    }
  }
  return out;
}

}  // namespace adhoc::kernels
