#include <benchmark/benchmark.h>

#include "adhoc/channel.hpp"
#include "adhoc/kernels.hpp"
#include "adhoc/mimo.hpp"
#include "adhoc/net_model.hpp"

namespace {

using adhoc::kernels::Exec;

void BM_InversePowerSums(benchmark::State& state, Exec exec) {
  const auto inst = adhoc::sample_network(static_cast<int>(state.range(0)), adhoc::Regime::dense, 11);
  for (auto _ : state) {
    auto out = adhoc::kernels::inverse_power_sums_self(inst.positions, inst.side, 3.0, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_MutualInformation(benchmark::State& state, Exec exec) {
  const int m = static_cast<int>(state.range(0));
  const auto inst = adhoc::sample_network(16 * m, adhoc::Regime::dense, 5);
  const auto grid = adhoc::build_cluster_grid_dim(inst, 4);
  adhoc::ChannelParams p;
  const auto ses = adhoc::build_mimo_session(inst, grid, grid.cell_index(0, 0), grid.cell_index(2, 0), p);
  const auto h = adhoc::sample_channel_matrix(p, inst, ses.tx_nodes, ses.rx_nodes, 3);
  adhoc::kernels::set_default_exec(exec);
  for (auto _ : state) {
    auto mi = adhoc::mimo_mutual_information(h, ses.per_node_power, p.N0, 32, 9);
    benchmark::DoNotOptimize(mi.mean);
  }
  adhoc::kernels::set_default_exec(Exec::parallel);
}

}  // namespace

BENCHMARK_CAPTURE(BM_InversePowerSums, serial, Exec::serial)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK_CAPTURE(BM_InversePowerSums, parallel, Exec::parallel)->RangeMultiplier(4)->Range(256, 4096);
BENCHMARK_CAPTURE(BM_MutualInformation, serial, Exec::serial)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_MutualInformation, parallel, Exec::parallel)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
