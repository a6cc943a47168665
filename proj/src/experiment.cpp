#include "adhoc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "adhoc/cutset.hpp"
#include "adhoc/kernels.hpp"
#include "adhoc/rng.hpp"

namespace adhoc {

ExponentFit fit_scaling_exponent(const std::vector<std::pair<double, double>>& points,
                                 std::optional<double> correct_logs) {
  if (points.size() < 3) throw std::invalid_argument("exponent fit needs at least 3 points");
  std::vector<double> x, y;
  for (auto [n, v] : points) {
    if (!(v > 0.0) || !(n > 1.0)) throw std::invalid_argument("exponent fit needs positive values and n > 1");
    double val = v;
    if (correct_logs) val /= std::pow(std::log(n), *correct_logs);
    x.push_back(std::log(n));
    y.push_back(std::log(val));
  }
  const double k = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("exponent fit needs distinct n values");
  ExponentFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(0.0, syy - f.slope * sxy);
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  f.stderr_slope = k > 2 ? std::sqrt(sse / (k - 2) / sxx) : 0.0;
  f.log_correction_power = correct_logs;
  return f;
}

LogPowerFit fit_with_log_power(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw std::invalid_argument("log-power fit needs at least 4 points");
  Eigen::MatrixXd a(points.size(), 3);
  Eigen::VectorXd b(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double ln = std::log(points[i].first);
    if (!(points[i].second > 0.0)) throw std::invalid_argument("log-power fit needs positive values");
    a(i, 0) = 1.0;
    a(i, 1) = ln;
    a(i, 2) = std::log(ln);
    b(i) = std::log(points[i].second);
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  return {c(1), c(2), c(0)};
}

void to_json(nlohmann::json& j, const ExponentFit& f) {
  j = {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"stderr", f.stderr_slope}};
  j["log_correction_power"] = f.log_correction_power ? nlohmann::json(*f.log_correction_power) : nlohmann::json();
}

std::string regime_of_scheme(const std::string& s) {
  if (s == "hierarchical" || s == "tdma" || s == "dense_bound") return "dense";
  if (s == "bursty" || s == "multihop" || s == "cutset") return "extended";
  throw std::invalid_argument("unknown scheme: " + s);
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
  if (j.contains("alpha_list")) c.alpha_list = j["alpha_list"].get<std::vector<double>>();
  if (j.contains("schemes")) c.schemes = j["schemes"].get<std::vector<std::string>>();
  c.levels_h = j.value("levels_h", c.levels_h);
  c.trials = j.value("trials", c.trials);
  c.seed = j.value("seed", c.seed);
  c.output_path = j.value("output_path", c.output_path);
  c.workers = j.value("workers", c.workers);
  c.epsilon = j.value("epsilon", c.epsilon);
  c.record_runtime = j.value("record_runtime", c.record_runtime);
  c.params.G = j.value("G", c.params.G);
  c.params.P = j.value("P", c.params.P);
  c.params.N0 = j.value("N0", c.params.N0);
  if (j.contains("scheme")) {
    const auto& s = j["scheme"];
    c.scheme.L = s.value("L", c.scheme.L);
    c.scheme.C = s.value("C", c.scheme.C);
    c.scheme.Q = s.value("Q", c.scheme.Q);
    c.scheme.K1 = s.value("K1", c.scheme.K1);
    c.scheme.quantizer_epsilon = s.value("quantizer_epsilon", c.scheme.quantizer_epsilon);
    c.scheme.mi_check_trials = s.value("mi_check_trials", c.scheme.mi_check_trials);
    c.scheme.mi_check_max_nodes = s.value("mi_check_max_nodes", c.scheme.mi_check_max_nodes);
    if (s.contains("alpha_mode")) c.scheme.alpha_mode = alpha_mode_from_string(s["alpha_mode"].get<std::string>());
  }
  validate(c);
  return c;
}

void validate(const SweepConfig& c) {
  if (c.n_list.size() < 3) throw std::invalid_argument("n_list needs at least 3 points");
  for (std::size_t i = 0; i < c.n_list.size(); ++i) {
    if (c.n_list[i] < 4) throw std::invalid_argument("every n must be >= 4");
    if (i > 0 && c.n_list[i] <= c.n_list[i - 1]) throw std::invalid_argument("n_list must be strictly increasing");
  }
  if (c.alpha_list.empty()) throw std::invalid_argument("alpha_list is empty");
  for (double a : c.alpha_list)
    if (!(a >= 2.0)) throw std::invalid_argument("path-loss exponent must be >= 2, got " + std::to_string(a));
  if (c.schemes.empty()) throw std::invalid_argument("schemes is empty");
  for (const auto& s : c.schemes) regime_of_scheme(s);
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.levels_h < 0) throw std::invalid_argument("levels_h must be >= 0");
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  ChannelParams p = c.params;
  p.alpha = c.alpha_list.front();
  adhoc::validate(p);
}

SweepRow run_cell(const SweepConfig& c, const std::string& scheme, int n, double alpha, int trial) {
  SweepRow row;
  row.scheme = scheme;
  row.n = n;
  row.alpha = alpha;
  row.trial = trial;
  row.h = scheme == "tdma" ? 0 : (scheme == "hierarchical" || scheme == "bursty" ? c.levels_h : 0);
  row.seed = cell_seed(c.seed, scheme, n, alpha, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string regime = regime_of_scheme(scheme);
    const std::uint64_t is = instance_seed(c.seed, regime, n, trial);
    const NetworkInstance inst = with_random_pairing(sample_network(n, regime_from_string(regime), is), is);
    ChannelParams p = c.params;
    p.alpha = alpha;
    SchemeConfig sc = c.scheme;
    sc.levels_h = row.h;
    sc.seed = row.seed;
    if (scheme == "hierarchical" || scheme == "tdma" || scheme == "bursty") {
      const ThroughputReport r = scheme == "bursty" ? run_bursty_extended(inst, p, sc) : run_hierarchical(inst, p, sc);
      row.rate = r.aggregate_rate;
      row.duty_cycle = r.duty_cycle;
      row.failure = r.failure;
    } else if (scheme == "multihop") {
      const ThroughputReport r = run_multihop_baseline(inst, p);
      row.rate = r.aggregate_rate;
      row.duty_cycle = 1.0;
      row.failure = r.failure;
    } else if (scheme == "cutset") {
      const CutGeometry cut = compute_cut(inst);
      const CutsetReport r = cutset_upper_bound(cut, p, c.epsilon);
      row.p_tot = r.p_tot;
      row.bound = r.bound;
    } else {
      row.bound = dense_simo_upper_bound(inst, p);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
    row.failure = true;
  }
  if (c.record_runtime)
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

namespace {

std::string fmt(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::string fmt(double v) { return fmt(std::optional<double>(v)); }

nlohmann::json summarize(const SweepConfig& c, const std::vector<SweepRow>& rows) {
  nlohmann::json s;
  s["schema_version"] = kSummarySchemaVersion;
  s["seed"] = c.seed;
  s["n_list"] = c.n_list;
  s["alpha_list"] = c.alpha_list;
  s["schemes"] = c.schemes;
  s["levels_h"] = c.levels_h;
  s["trials"] = c.trials;
  nlohmann::json fits = nlohmann::json::array();
  std::map<std::tuple<std::string, int, double, int>, const SweepRow*> index;
  for (const auto& r : rows) index[{r.scheme, r.n, r.alpha, r.trial}] = &r;

  for (const auto& scheme : c.schemes)
    for (double alpha : c.alpha_list) {
      nlohmann::json e{{"scheme", scheme}, {"alpha", alpha}};
      std::vector<std::pair<double, double>> pts, ptot;
      int cells = 0, failures = 0, errors = 0;
      for (int n : c.n_list) {
        double sum = 0, psum = 0;
        int k = 0;
        for (int t = 0; t < c.trials; ++t) {
          const SweepRow& r = *index.at({scheme, n, alpha, t});
          ++cells;
          if (r.failure) ++failures;
          if (!r.error.empty()) {
            ++errors;
            continue;
          }
          const auto v = r.rate ? r.rate : r.bound;
          if (v) {
            sum += *v;
            ++k;
          }
          if (r.p_tot) psum += *r.p_tot;
        }
        if (k > 0 && sum > 0) pts.push_back({n, sum / k});
        if (psum > 0) ptot.push_back({n, psum / c.trials});
      }
      e["failure_fraction"] = static_cast<double>(failures) / cells;
      e["errors"] = errors;
      try {
        e["fit"] = fit_scaling_exponent(pts);
      } catch (const std::exception& ex) {
        e["fit"] = nullptr;
        e["fit_error"] = ex.what();
      }
      if (scheme == "cutset") {
        try {
          e["p_tot_fit"] = fit_scaling_exponent(ptot);
          e["p_tot_fit_log2_corrected"] = fit_scaling_exponent(ptot, 2.0);
          if (ptot.size() >= 4) {
            const auto lp = fit_with_log_power(ptot);
            e["p_tot_log_power_fit"] = {{"slope", lp.slope}, {"log_power", lp.log_power}};
          }
        } catch (const std::exception& ex) {
          e["p_tot_fit_error"] = ex.what();
        }
        e["theory_exponent"] = scaling_exponent_theory(alpha);
      }
      fits.push_back(e);
    }
  s["fits"] = fits;

  // pointwise sandwich checks on shared instances
  auto has = [&](const std::string& s) { return std::find(c.schemes.begin(), c.schemes.end(), s) != c.schemes.end(); };
  nlohmann::json sandwich = nlohmann::json::array();
  auto check = [&](const std::string& lower, const std::string& upper) {
    int checked = 0, violated = 0;
    for (double alpha : c.alpha_list)
      for (int n : c.n_list)
        for (int t = 0; t < c.trials; ++t) {
          const SweepRow& lo = *index.at({lower, n, alpha, t});
          const SweepRow& up = *index.at({upper, n, alpha, t});
          if (!lo.rate || !up.bound) continue;
          ++checked;
          if (*lo.rate > *up.bound) ++violated;
        }
    sandwich.push_back({{"lower", lower}, {"upper", upper}, {"checked", checked}, {"violations", violated}});
  };
  if (has("bursty") && has("cutset")) check("bursty", "cutset");
  if (has("multihop") && has("cutset")) check("multihop", "cutset");
  if (has("hierarchical") && has("dense_bound")) check("hierarchical", "dense_bound");
  if (has("tdma") && has("dense_bound")) check("tdma", "dense_bound");
  s["sandwich"] = sandwich;

  nlohmann::json errs = nlohmann::json::array();
  for (const auto& r : rows)
    if (!r.error.empty())
      errs.push_back({{"scheme", r.scheme}, {"n", r.n}, {"alpha", r.alpha}, {"trial", r.trial}, {"error", r.error}});
  s["cell_errors"] = errs;
  return s;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& c) {
  validate(c);
  struct Cell {
    std::string scheme;
    double alpha;
    int n, trial;
  };
  std::vector<Cell> cells;
  for (const auto& s : c.schemes)
    for (double a : c.alpha_list)
      for (int n : c.n_list)
        for (int t = 0; t < c.trials; ++t) cells.push_back({s, a, n, t});

  SweepResult out;
  out.rows.resize(cells.size());
  const int count = static_cast<int>(cells.size());
  const int workers = std::max(1, c.workers);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int i = 0; i < count; ++i) {
    const Cell& cell = cells[i];
    out.rows[i] = run_cell(c, cell.scheme, cell.n, cell.alpha, cell.trial);
  }
  for (const auto& r : out.rows)
    if (!r.error.empty()) out.any_error = true;
  out.summary = summarize(c, out.rows);
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    os << row.scheme << ',' << row.n << ',' << fmt(row.alpha) << ',' << row.h << ',' << row.seed << ','
       << fmt(row.rate) << ',' << fmt(row.duty_cycle) << ',' << (row.failure ? 1 : 0) << ',' << fmt(row.p_tot)
       << ',' << fmt(row.bound) << ',' << fmt(row.runtime_ms) << '\n';
  }
  return os.str();
}

void write_sweep_outputs(const SweepResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream csv(std::filesystem::path(dir) / "sweep.csv", std::ios::binary);
  csv << sweep_csv(r);
  std::ofstream js(std::filesystem::path(dir) / "summary.json", std::ios::binary);
  js << r.summary.dump(2) << '\n';
}

}  // namespace adhoc
