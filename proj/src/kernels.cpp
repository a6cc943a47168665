#include "adhoc/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "adhoc/channel.hpp"

namespace adhoc::kernels {

namespace {

std::atomic<Exec> g_exec{Exec::parallel};

// squared unit distance below which the far-field guard trips
constexpr double kGuard2 = 1e-18;

inline double inv_pow(double d2, double half_alpha) {
  if (half_alpha == 1.0) return 1.0 / d2;
  if (half_alpha == 1.5) return 1.0 / (d2 * std::sqrt(d2));
  if (half_alpha == 2.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -half_alpha);
}

[[noreturn]] void near_field() { throw NearFieldError("node distance below the near-field guard"); }

}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }

void set_workers(int workers) {
#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

std::vector<double> inverse_power_sums(const std::vector<Point>& a, const std::vector<Point>& b,
                                       double scale, double alpha, Exec exec) {
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  std::vector<double> out(na, 0.0);
  const double s2 = scale * scale, ha = alpha / 2;
  bool bad = false;
  auto row = [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < nb; ++j) {
      const double d2 = dist2(a[i], b[j]);
      if (d2 < kGuard2) return false;
      acc += inv_pow(d2 * s2, ha);
    }
    out[i] = acc;
    return true;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int i = 0; i < na; ++i) bad = bad || !row(i);
  } else {
    for (int i = 0; i < na && !bad; ++i) bad = !row(i);
  }
  if (bad) near_field();
  return out;
}

std::vector<double> inverse_power_sums_self(const std::vector<Point>& pts, double scale, double alpha,
                                            Exec exec) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> out(n, 0.0);
  const double s2 = scale * scale, ha = alpha / 2;
  bool bad = false;
  auto row = [&](int i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d2 = dist2(pts[i], pts[j]);
      if (d2 < kGuard2) return false;
      acc += inv_pow(d2 * s2, ha);
    }
    out[i] = acc;
    return true;
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(|| : bad)
    for (int i = 0; i < n; ++i) bad = bad || !row(i);
  } else {
    for (int i = 0; i < n && !bad; ++i) bad = !row(i);
  }
  if (bad) near_field();
  return out;
}

double min_pairwise_distance(const std::vector<Point>& pts, Exec exec) {
  const int n = static_cast<int>(pts.size());
  double best = std::numeric_limits<double>::infinity();
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : best)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::min(best, dist2(pts[i], pts[j]));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::min(best, dist2(pts[i], pts[j]));
  }
  return std::sqrt(best);
}

MeanEstimate summarize(const std::vector<double>& samples) {
  MeanEstimate e;
  e.trials = static_cast<int>(samples.size());
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double v : samples) sum += v;
  e.mean = sum / e.trials;
  if (e.trials > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / (e.trials - 1) / e.trials);
  }
  return e;
}

}  // namespace adhoc::kernels
