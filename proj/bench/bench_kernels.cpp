// Copyright 2026 The Whichway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP execution of the parallel kernels.
#include <benchmark/benchmark.h>

#include "whichway/discriminate.hpp"
#include "whichway/scenarios.hpp"

namespace {

using namespace whichway;

Execution mode(const benchmark::State &state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SweepGrid(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_grid(GridScenario::example1, 31, mode(state)));
    }
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SweepGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RunBatch(benchmark::State &state) {
    std::vector<ExperimentConfig> configs;
    for (std::uint64_t seed = 0; seed < 256; ++seed) {
        configs.push_back(random_experiment(seed));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_batch(configs, mode(state)));
    }
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_RunBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MultiStartOptimizer(benchmark::State &state) {
    const StinespringChannel ch0(random_unitary(4, 1), random_density(2, 2), 2);
    const StinespringChannel ch1(random_unitary(4, 3), random_density(2, 4), 2);
    OptimizerOptions options;
    options.exec = mode(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unassisted_distance(ch0, ch1, options));
    }
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_MultiStartOptimizer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
