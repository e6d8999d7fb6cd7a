#include <benchmark/benchmark.h>

#include <numbers>

#include "relex/arm/dataset.hpp"
#include "relex/arm/search.hpp"
#include "relex/exp/experiment.hpp"

using namespace relex;

namespace {

ExperimentSpec noisy_spec(Task task, int trials, int jobs) {
    ExperimentSpec spec;
    spec.task = task;
    spec.scenario = task == Task::stacking ? stacking_scenario() : reordering_scenario();
    spec.mode = Mode::full;
    spec.trials = trials;
    spec.master_seed = 12345;
    spec.failures = FailureModel::standard_noise();
    spec.sensors = SensorModel::standard_noise();
    spec.jobs = jobs;
    return spec;
}

void BM_experiment_serial(benchmark::State& state) {
    const ExperimentSpec spec = noisy_spec(Task::stacking, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        const ModeResults res = run_experiment_serial(spec);
        benchmark::DoNotOptimize(res.trials.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_experiment_parallel(benchmark::State& state) {
    const ExperimentSpec spec = noisy_spec(Task::stacking, static_cast<int>(state.range(0)),
                                           static_cast<int>(state.range(1)));
    for (auto _ : state) {
        const ModeResults res = run_experiment(spec);
        benchmark::DoNotOptimize(res.trials.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_experiment_reordering_serial(benchmark::State& state) {
    const ExperimentSpec spec = noisy_spec(Task::reordering, static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        const ModeResults res = run_experiment_serial(spec);
        benchmark::DoNotOptimize(res.trials.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_experiment_reordering_parallel(benchmark::State& state) {
    const ExperimentSpec spec = noisy_spec(Task::reordering, static_cast<int>(state.range(0)),
                                           static_cast<int>(state.range(1)));
    for (auto _ : state) {
        const ModeResults res = run_experiment(spec);
        benchmark::DoNotOptimize(res.trials.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_anytime_search(benchmark::State& state) {
    const ArmModel arm;
    const double res = 2.0 * std::numbers::pi / static_cast<double>(state.range(0));
    const CSpaceGrid grid(arm, {res, res, res}, {{1.2, 0.4, 0.35}});
    const CellIndex start{0, 0, 0};
    const CellIndex goal{static_cast<int>(state.range(0)) - 1, 1, 1};
    for (auto _ : state) {
        const AraResult r = ara_star(grid, start, goal);
        benchmark::DoNotOptimize(r.expansions);
    }
}

void BM_expert_dataset(benchmark::State& state) {
    const ArmModel arm;
    const CSpaceGrid grid(arm, {0.9, 0.9, 0.9}, {});
    ExpertConfig cfg;
    cfg.trajectories = static_cast<int>(state.range(0));
    cfg.goal = {3, 3, 3};
    cfg.dense_samples = 4;
    cfg.dense_radius = 1.0;
    for (auto _ : state) {
        const Dataset ds = generate_trajectories(grid, cfg);
        benchmark::DoNotOptimize(ds.rows());
    }
}

}  // namespace

BENCHMARK(BM_experiment_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_parallel)
    ->Args({64, 2})
    ->Args({64, 4})
    ->Args({256, 2})
    ->Args({256, 4})
    ->Args({256, 8})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_reordering_serial)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_reordering_parallel)
    ->Args({128, 4})
    ->Args({128, 8})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_anytime_search)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_expert_dataset)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
