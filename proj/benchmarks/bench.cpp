#include <benchmark/benchmark.h>

#include "lcsim/analysis.hpp"
#include "lcsim/engine.hpp"
#include "lcsim/mining.hpp"
#include "lcsim/strategies.hpp"

namespace {

lcsim::SimulationConfig config(double horizon) {
    lcsim::SimulationConfig cfg;
    cfg.lambda_h = 1.0;
    cfg.lambda_a = 0.4;
    cfg.delta = 0.2;
    cfg.n_nodes = 4;
    cfg.horizon = horizon;
    cfg.seed = 1;
    return cfg;
}

void BM_EngineRun(benchmark::State& state) {
    const auto cfg = config(static_cast<double>(state.range(0)));
    for (auto _ : state) {
        auto strat = lcsim::private_attack(1, 6);
        benchmark::DoNotOptimize(lcsim::run_simulation(cfg, *strat));
    }
}
BENCHMARK(BM_EngineRun)->Arg(100)->Arg(400);

void BM_BrwSimulate(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(lcsim::brw_simulate(1.0, t, seed++));
}
BENCHMARK(BM_BrwSimulate)->Arg(4)->Arg(8);

void BM_Partition(benchmark::State& state) {
    const auto cfg = config(static_cast<double>(state.range(0)));
    auto strat = lcsim::private_attack(1, 6);
    const auto trace = lcsim::run_simulation(cfg, *strat);
    for (auto _ : state)
        benchmark::DoNotOptimize(lcsim::partition(trace.tree));
}
BENCHMARK(BM_Partition)->Arg(100)->Arg(400);

void BM_NakamotoCandidates(benchmark::State& state) {
    const auto cfg = config(static_cast<double>(state.range(0)));
    auto strat = lcsim::private_attack(1, 6);
    const auto trace = lcsim::run_simulation(cfg, *strat);
    for (auto _ : state)
        benchmark::DoNotOptimize(lcsim::nakamoto_candidates(trace, cfg.delta));
}
BENCHMARK(BM_NakamotoCandidates)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
