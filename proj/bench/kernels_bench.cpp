// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "hhcarbon/kernels.hpp"
#include "hhcarbon/synth.hpp"

using namespace hhcarbon;

namespace {

struct FootprintData {
  std::vector<int> years;
  std::vector<std::array<double, kSectorCount>> spend;
  std::vector<double> energy, carbon;
  std::vector<kernels::FootprintStatus> status;

  explicit FootprintData(std::size_t n) : years(n), spend(n), energy(n), carbon(n), status(n) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0, 1e4);
    for (std::size_t i = 0; i < n; ++i) {
      years[i] = kFirstYear + static_cast<int>(i % kYearCount);
      for (auto& v : spend[i]) v = u(gen);
    }
  }
};

template <bool Parallel>
void BM_Footprint(benchmark::State& state) {
  FootprintData d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::footprint_rows_parallel(builtin_table(), {d.years, d.spend}, {d.energy, d.carbon, d.status});
    else
      kernels::footprint_rows_serial(builtin_table(), {d.years, d.spend}, {d.energy, d.carbon, d.status});
    benchmark::DoNotOptimize(d.energy.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct PanelData {
  Eigen::MatrixXd x;
  Eigen::VectorXd u;
  std::vector<int> group;
  int groups;

  PanelData(int rows, int cols) : x(rows, cols), u(rows), group(static_cast<std::size_t>(rows)), groups(rows / 4) {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> nd;
    for (int i = 0; i < rows; ++i) {
      group[static_cast<std::size_t>(i)] = i / 4;
      u(i) = nd(gen);
      for (int j = 0; j < cols; ++j) x(i, j) = nd(gen);
    }
  }
};

template <bool Parallel>
void BM_Demean(benchmark::State& state) {
  PanelData d(static_cast<int>(state.range(0)), 30);
  for (auto _ : state) {
    state.PauseTiming();
    Eigen::MatrixXd m = d.x;
    state.ResumeTiming();
    if constexpr (Parallel)
      kernels::demean_parallel(m, d.group, d.groups);
    else
      kernels::demean_serial(m, d.group, d.groups);
    benchmark::DoNotOptimize(m.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_ClusterScores(benchmark::State& state) {
  PanelData d(static_cast<int>(state.range(0)), 30);
  for (auto _ : state) {
    Eigen::MatrixXd s = Parallel ? kernels::cluster_scores_parallel(d.x, d.u, d.group, d.groups)
                                 : kernels::cluster_scores_serial(d.x, d.u, d.group, d.groups);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Generate(benchmark::State& state) {
  DGPConfig cfg;
  cfg.n_households = static_cast<std::size_t>(state.range(0));
  const Execution exec = state.range(1) ? Execution::Parallel : Execution::Serial;
  for (auto _ : state) benchmark::DoNotOptimize(generate_panel(cfg, exec).records.size());
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_Footprint<false>)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_Footprint<true>)->Arg(1 << 14)->Arg(1 << 18)->UseRealTime();
BENCHMARK(BM_Demean<false>)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(BM_Demean<true>)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(BM_ClusterScores<false>)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(BM_ClusterScores<true>)->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(BM_Generate)->Args({5000, 0})->Args({5000, 1})->UseRealTime();

BENCHMARK_MAIN();
