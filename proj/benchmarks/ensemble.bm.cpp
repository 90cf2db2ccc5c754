// Copyright 2026 The qensemble Authors
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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "qens/bench.hpp"
#include "qens/ensemble.hpp"

namespace {

using namespace qens;

LabeledDataset random_dataset(int n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    std::vector<LabeledPoint> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back({{u(rng), u(rng)}, i % 2});
    }
    return LabeledDataset(pts);
}

// Full statevector of d + 2N + 2 qubits.
void BM_ensemble_full(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto data = random_dataset(1 << d);
    EnsembleConfig cfg;
    cfg.d = d;
    cfg.mode = EnsembleMode::kFullCircuit;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(data, {0.5, 0.5}, cfg).prob_one);
    }
}
BENCHMARK(BM_ensemble_full)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ensemble_trajectories(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const auto data = random_dataset(1 << d);
    EnsembleConfig cfg;
    cfg.d = d;
    cfg.mode = EnsembleMode::kTrajectories;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ensemble(data, {0.5, 0.5}, cfg).prob_one);
    }
}
BENCHMARK(BM_ensemble_trajectories)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

void BM_gaussian_benchmark(benchmark::State &state) {
    const std::vector<int> bs{1, 2, 4, 8, 16};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bench::run_benchmark(bench::GaussianSpec{}, bs, 10, 0.9).size());
    }
}
BENCHMARK(BM_gaussian_benchmark)->Unit(benchmark::kMillisecond);

}  // namespace
