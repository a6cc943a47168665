#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "adhoc/cutset.hpp"
#include "adhoc/experiment.hpp"
#include "adhoc/hierarchy.hpp"
#include "adhoc/kernels.hpp"
#include "adhoc/mimo.hpp"
#include "adhoc/rng.hpp"
#include "adhoc/verification.hpp"

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return json::parse(in);
}

void emit(const json& j, const std::string& out_dir, const std::string& file) {
  const std::string text = j.dump(2);
  std::cout << text << '\n';
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / file) << text << '\n';
  }
}

struct Common {
  std::string config;
  std::uint64_t seed = 1;
  std::string out;
  int workers = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON configuration file");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacity scaling experiments for hierarchical cooperation in ad hoc networks"};
  app.require_subcommand(1);

  Common sw, vl, mm, cs, db, rn;

  auto* sweep = app.add_subcommand("sweep", "run a (scheme, n, alpha, seed) sweep and write CSV + summary");
  add_common(sweep, sw);
  bool record_runtime = false;
  sweep->add_flag("--record-runtime", record_runtime, "fill runtime_ms (breaks byte-identical reruns)");

  auto* verify = app.add_subcommand("verify-lemmas", "run the lemma property suites");
  add_common(verify, vl);
  int verify_trials = -1;
  std::vector<std::string> suites;
  verify->add_option("--trials", verify_trials, "override seeds / Monte Carlo draws per suite");
  verify->add_option("--suite", suites, "suite names (default: all)");

  auto* mimo = app.add_subcommand("mimo-mi", "mutual information of a random M x M non-neighbor session");
  add_common(mimo, mm);
  int m_nodes = 16, mi_trials = 200;
  double mi_alpha = 2.0;
  mimo->add_option("--m", m_nodes, "nodes per cluster")->check(CLI::PositiveNumber);
  mimo->add_option("--alpha", mi_alpha, "path-loss exponent");
  mimo->add_option("--trials", mi_trials, "fading draws")->check(CLI::PositiveNumber);

  auto* cut = app.add_subcommand("cutset", "cut-set upper bound on one extended instance");
  add_common(cut, cs);
  int cut_n = 1024;
  double cut_alpha = 3.0, cut_eps = 0.05;
  bool cut_norm = false;
  cut->add_option("--n", cut_n, "number of nodes")->check(CLI::Range(4, 1 << 20));
  cut->add_option("--alpha", cut_alpha, "path-loss exponent");
  cut->add_option("--epsilon", cut_eps, "exponent slack of the far term");
  cut->add_flag("--spectral-norm", cut_norm, "also report the equalized-matrix spectral norm");

  auto* dense = app.add_subcommand("dense-bound", "dense-network SIMO upper bound on one instance");
  add_common(dense, db);
  int dense_n = 1024;
  double dense_alpha = 3.0;
  dense->add_option("--n", dense_n, "number of nodes")->check(CLI::Range(2, 1 << 20));
  dense->add_option("--alpha", dense_alpha, "path-loss exponent");

  auto* run = app.add_subcommand("run", "one throughput report (hierarchical, tdma, bursty, multihop)");
  add_common(run, rn);
  std::string run_scheme = "hierarchical";
  int run_n = 1024, run_h = 1;
  double run_alpha = 3.0;
  run->add_option("--scheme", run_scheme)->check(CLI::IsMember({"hierarchical", "tdma", "bursty", "multihop"}));
  run->add_option("--n", run_n, "number of nodes")->check(CLI::Range(4, 1 << 20));
  run->add_option("--levels", run_h, "hierarchy levels")->check(CLI::NonNegativeNumber);
  run->add_option("--alpha", run_alpha, "path-loss exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      adhoc::SweepConfig c = sw.config.empty() ? adhoc::SweepConfig{} : adhoc::sweep_config_from_json(load_json(sw.config));
      if (sweep->count("--seed")) c.seed = sw.seed;
      if (sweep->count("--workers")) c.workers = sw.workers;
      if (!sw.out.empty()) c.output_path = sw.out;
      c.record_runtime = c.record_runtime || record_runtime;
      adhoc::validate(c);
      adhoc::kernels::set_workers(c.workers);
      const auto r = adhoc::run_sweep(c);
      adhoc::write_sweep_outputs(r, c.output_path);
      std::cerr << "wrote " << r.rows.size() << " rows to " << c.output_path << '\n';
      return r.any_error ? 1 : 0;
    }
    if (*verify) {
      adhoc::VerifyConfig c = vl.config.empty() ? adhoc::VerifyConfig{} : adhoc::verify_config_from_json(load_json(vl.config));
      if (verify->count("--seed")) c.seed = vl.seed;
      if (verify_trials >= 0) c.trials = verify_trials;
      if (!suites.empty()) c.suites = suites;
      adhoc::kernels::set_workers(vl.workers);
      const auto results = adhoc::verify_lemmas(c);
      const json rep = adhoc::verify_report(results);
      emit(rep, vl.out, "verify.json");
      return rep["all_pass"].get<bool>() ? 0 : 1;
    }

    adhoc::ChannelParams p;
    if (*mimo) {
      if (!mm.config.empty()) {
        const json j = load_json(mm.config);
        p.G = j.value("G", p.G);
        p.P = j.value("P", p.P);
        p.N0 = j.value("N0", p.N0);
      }
      p.alpha = mi_alpha;
      adhoc::validate(p);
      adhoc::kernels::set_workers(mm.workers);
      // two cells of side 1/4 two cell-widths apart, M uniform nodes in each
      adhoc::Rng rng = adhoc::make_rng(mm.seed);
      std::uniform_real_distribution<double> u(0.0, 0.25);
      std::vector<adhoc::Point> pts;
      for (int i = 0; i < m_nodes; ++i) pts.push_back({u(rng), u(rng)});
      for (int i = 0; i < m_nodes; ++i) pts.push_back({0.5 + u(rng), u(rng)});
      const auto inst = adhoc::instance_from_points(pts, {});
      const auto grid = adhoc::build_cluster_grid_dim(inst, 4);
      const auto ses = adhoc::build_mimo_session(inst, grid, grid.cell_index(0, 0), grid.cell_index(2, 0), p);
      const auto h = adhoc::sample_channel_matrix(p, inst, ses.tx_nodes, ses.rx_nodes, mm.seed);
      const auto q = adhoc::default_quantizer(p);
      const auto mi = adhoc::mimo_mutual_information(h, ses.per_node_power, p.N0, mi_trials, mm.seed);
      const auto qmi = adhoc::quantized_mutual_information(h, ses.per_node_power, p.N0, q, mi_trials, mm.seed);
      const auto rr = adhoc::rho_range(p.alpha);
      const double snr = p.G * p.P / p.N0;
      json j{{"M", m_nodes},
             {"alpha", p.alpha},
             {"r_sd", ses.r_sd},
             {"mi_bits", mi.mean},
             {"mi_std_error", mi.std_error},
             {"quantized_mi_bits", qmi.mean},
             {"quantized_std_error", qmi.std_error},
             {"quantizer", {{"delta_sq", q.delta_sq}, {"rate_q", q.rate_q}}},
             {"pz_bound", adhoc::paley_zygmund_bound(rr.a, rr.b, snr, m_nodes, adhoc::pz_threshold(rr.a))},
             {"rho_range", {rr.a, rr.b}}};
      emit(j, mm.out, "mimo_mi.json");
      return 0;
    }
    if (*cut) {
      p.alpha = cut_alpha;
      adhoc::validate(p);
      adhoc::kernels::set_workers(cs.workers);
      const auto inst = adhoc::sample_network(cut_n, adhoc::Regime::extended, cs.seed);
      const auto g = adhoc::compute_cut(inst);
      json j = adhoc::cutset_upper_bound(g, p, cut_eps);
      if (cut_norm && !g.D_far.empty())
        j["spectral_norm_sq"] = adhoc::spectral_norm_sq(adhoc::build_equalized_matrix(g, p.alpha, cs.seed));
      emit(j, cs.out, "cutset.json");
      return 0;
    }
    if (*dense) {
      p.alpha = dense_alpha;
      adhoc::validate(p);
      adhoc::kernels::set_workers(db.workers);
      const auto inst = adhoc::sample_network(dense_n, adhoc::Regime::dense, db.seed);
      const double b = adhoc::dense_simo_upper_bound(inst, p);
      json j{{"n", dense_n}, {"alpha", p.alpha}, {"bound", b}, {"bound_over_n_log2_n", b / (dense_n * std::log2(dense_n))}};
      emit(j, db.out, "dense_bound.json");
      return 0;
    }
    if (*run) {
      p.alpha = run_alpha;
      adhoc::validate(p);
      adhoc::kernels::set_workers(rn.workers);
      const bool ext = run_scheme == "bursty" || run_scheme == "multihop";
      const auto inst = adhoc::with_random_pairing(
          adhoc::sample_network(run_n, ext ? adhoc::Regime::extended : adhoc::Regime::dense, rn.seed), rn.seed);
      adhoc::SchemeConfig sc;
      sc.levels_h = run_scheme == "tdma" ? 0 : run_h;
      sc.seed = rn.seed;
      adhoc::ThroughputReport r;
      if (run_scheme == "multihop") r = adhoc::run_multihop_baseline(inst, p);
      else if (run_scheme == "bursty") r = adhoc::run_bursty_extended(inst, p, sc);
      else r = adhoc::run_hierarchical(inst, p, sc);
      json j = r;
      const auto audit = adhoc::per_node_power_audit(r, p, r.regime);
      j["power_audit"] = {{"max_avg_power", audit.max_avg_power}, {"limit", audit.limit}, {"pass", audit.pass}};
      emit(j, rn.out, "report.json");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
