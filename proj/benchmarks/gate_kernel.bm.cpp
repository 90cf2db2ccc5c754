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

#include "qens/qsim.hpp"

namespace {

using namespace qens;

void BM_single_qubit_gate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto s = StateVector::zero(n);
    const auto h = GateOp::h(n / 2);
    for (auto _ : state) {
        apply_gate(s, h);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_single_qubit_gate)->DenseRange(10, 22, 4);

void BM_controlled_gate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto s = StateVector::zero(n);
    apply_gate(s, GateOp::h(0));
    const auto cx = GateOp::cx(0, n - 1);
    for (auto _ : state) {
        apply_gate(s, cx);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_controlled_gate)->DenseRange(10, 22, 4);

void BM_controlled_swap(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    auto s = StateVector::zero(n);
    apply_gate(s, GateOp::h(0));
    apply_gate(s, GateOp::h(1));
    const auto cswap = GateOp::cswap(0, 1, n - 1);
    for (auto _ : state) {
        apply_gate(s, cswap);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_controlled_swap)->DenseRange(10, 22, 4);

}  // namespace
