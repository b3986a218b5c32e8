#include <benchmark/benchmark.h>

#include "levyepi/engine.hpp"
#include "levyepi/estimators.hpp"
#include "levyepi/scenario.hpp"
#include "levyepi/thresholds.hpp"

namespace {

void BM_Classify(benchmark::State& state) {
    levyepi::Scenario sc = levyepi::preset("table1-extinction");
    for (auto _ : state) {
        auto rep = levyepi::classify(sc.model, sc.noise, sc.jumps, sc.p);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_Classify);

void BM_SimulateSteps(benchmark::State& state) {
    levyepi::Scenario sc = levyepi::preset("table1-extinction");
    levyepi::SimConfig cfg = sc.sim;
    cfg.t_end = static_cast<double>(state.range(0)) * cfg.dt;
    cfg.record_stride = 1000;
    std::uint64_t path = 0;
    for (auto _ : state) {
        auto traj =
            levyepi::simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init, path++);
        benchmark::DoNotOptimize(traj.brownian_digest);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateSteps)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_SimulateAux(benchmark::State& state) {
    levyepi::Scenario sc = levyepi::preset("table1-extinction");
    levyepi::SimConfig cfg = sc.sim;
    cfg.t_end = 10.0;
    cfg.record_stride = 1000;
    std::uint64_t path = 0;
    for (auto _ : state) {
        auto traj = levyepi::simulate_aux(sc.model.lambda_h, sc.model.mu_h,
                                          sc.noise.sigma[0], sc.jumps, 0, cfg,
                                          sc.init.s, path++);
        benchmark::DoNotOptimize(traj.brownian_digest);
    }
}
BENCHMARK(BM_SimulateAux);

void BM_TimeAverage(benchmark::State& state) {
    levyepi::Scenario sc = levyepi::preset("table1-extinction");
    levyepi::SimConfig cfg = sc.sim;
    cfg.t_end = 50.0;
    auto traj = levyepi::simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init);
    for (auto _ : state) {
        double avg = levyepi::time_average(traj, -1, 1);
        benchmark::DoNotOptimize(avg);
    }
}
BENCHMARK(BM_TimeAverage);

}  // namespace

BENCHMARK_MAIN();
