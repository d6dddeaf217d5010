// Serial reference vs OpenMP estimate on the two main kernels.
// Arg: worker count. Both variants do the same draws and return the same bits.

#include <benchmark/benchmark.h>

#include "ptkl/kernels.hpp"
#include "ptkl/mc_harness.hpp"

namespace {

using namespace ptkl;

constexpr std::uint64_t kTreeDraws = 20000;
constexpr std::uint64_t kBootstrapDraws = 20000;

PolyaTreeKlKernel tree_kernel() {
  return PolyaTreeKlKernel(PolyaTreeSpec(1.0, RhoFamily::polynomial(2.0), 8));
}

BayesianBootstrapKlKernel bootstrap_kernel() {
  return BayesianBootstrapKlKernel(DiscreteModel::uniform(100), AlphaSchedule::linear(1.0));
}

template <class Kernel, bool Parallel>
void run(benchmark::State& state, const Kernel& kernel, std::uint64_t draws) {
  const EstimateConfig cfg{draws, static_cast<unsigned>(state.range(0)), 42, 0};
  for (auto _ : state) {
    auto out = Parallel ? estimate_many(kernel, cfg) : estimate_many_serial(kernel, cfg);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * draws));
}

void BM_TreeSerial(benchmark::State& s) { run<PolyaTreeKlKernel, false>(s, tree_kernel(), kTreeDraws); }
void BM_TreeOpenMP(benchmark::State& s) { run<PolyaTreeKlKernel, true>(s, tree_kernel(), kTreeDraws); }
void BM_BootstrapSerial(benchmark::State& s) {
  run<BayesianBootstrapKlKernel, false>(s, bootstrap_kernel(), kBootstrapDraws);
}
void BM_BootstrapOpenMP(benchmark::State& s) {
  run<BayesianBootstrapKlKernel, true>(s, bootstrap_kernel(), kBootstrapDraws);
}

}  // namespace

BENCHMARK(BM_TreeSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BootstrapSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapOpenMP)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
