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

#include "qens/ensemble.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "qens/errors.hpp"
#include "qens/seeding.hpp"

namespace qens {

Permutation::Permutation(std::vector<std::pair<int, int>> swaps) : swaps_(std::move(swaps)) {
    for (const auto &[p, q] : swaps_) {
        if (p < 0 || q < 0 || p == q) {
            throw ValidationError("invalid swap (" + std::to_string(p) + ", " + std::to_string(q) + ")");
        }
    }
}

Permutation Permutation::from_sources(std::span<const int> source_of) {
    const int n = static_cast<int>(source_of.size());
    std::vector<int> seen(source_of.begin(), source_of.end());
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < n; ++i) {
        if (seen[i] != i) {
            throw ValidationError("source list is not a permutation");
        }
    }
    std::vector<int> arrangement(n);
    std::iota(arrangement.begin(), arrangement.end(), 0);
    std::vector<std::pair<int, int>> swaps;
    for (int p = 0; p < n; ++p) {
        if (arrangement[p] == source_of[p]) {
            continue;
        }
        const int q = static_cast<int>(std::find(arrangement.begin() + p + 1, arrangement.end(), source_of[p]) -
                                       arrangement.begin());
        std::swap(arrangement[p], arrangement[q]);
        swaps.emplace_back(p, q);
    }
    return Permutation(std::move(swaps));
}

Permutation Permutation::rotation(int n, int shift) {
    if (n < 1) {
        throw ValidationError("rotation needs at least one position");
    }
    std::vector<int> source_of(n);
    const int s = ((shift % n) + n) % n;
    for (int p = 0; p < n; ++p) {
        source_of[p] = (p + s) % n;
    }
    return from_sources(source_of);
}

void Permutation::apply(std::vector<int> &arrangement) const {
    for (const auto &[p, q] : swaps_) {
        std::swap(arrangement.at(p), arrangement.at(q));
    }
}

int Permutation::extent() const {
    int result = 0;
    for (const auto &[p, q] : swaps_) {
        result = std::max({result, p + 1, q + 1});
    }
    return result;
}

std::vector<int> SwapPlan::arrangement(std::uint64_t b) const {
    if (b >= trajectories()) {
        throw IndexError("trajectory " + std::to_string(b) + " outside plan of " + std::to_string(trajectories()));
    }
    std::vector<int> result(n_points);
    std::iota(result.begin(), result.end(), 0);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const bool second = (b >> i) & 1;
        (second ? steps[i].second : steps[i].first).apply(result);
    }
    return result;
}

int SwapPlan::active_point(std::uint64_t b) const {
    return arrangement(b)[0];
}

void SwapPlan::validate() const {
    if (n_points < 1) {
        throw ValidationError("swap plan needs at least one data position");
    }
    if (steps.empty()) {
        throw ValidationError("swap plan needs d >= 1");
    }
    for (const auto &step : steps) {
        if (step.first.extent() > n_points || step.second.extent() > n_points) {
            throw ValidationError("swap plan moves a position outside the " + std::to_string(n_points) +
                                  " data positions");
        }
    }
}

SwapPlan default_swap_plan(int d, int n_points) {
    if (d < 1 || n_points < 1) {
        throw ValidationError("default plan needs d >= 1 and n_points >= 1");
    }
    SwapPlan plan;
    plan.n_points = n_points;
    for (int i = 0; i < d; ++i) {
        const int shift = static_cast<int>((std::uint64_t{1} << i) % static_cast<std::uint64_t>(n_points));
        plan.steps.push_back({Permutation{}, Permutation::rotation(n_points, shift)});
    }
    return plan;
}

SwapPlan random_swap_plan(int d, int n_points, std::uint64_t seed) {
    if (d < 1 || n_points < 1) {
        throw ValidationError("random plan needs d >= 1 and n_points >= 1");
    }
    std::mt19937_64 rng(seed);
    auto draw = [&] {
        std::vector<int> source_of(n_points);
        std::iota(source_of.begin(), source_of.end(), 0);
        std::shuffle(source_of.begin(), source_of.end(), rng);
        return Permutation::from_sources(source_of);
    };
    SwapPlan plan;
    plan.n_points = n_points;
    for (int i = 0; i < d; ++i) {
        auto first = draw();
        auto second = draw();
        plan.steps.push_back({std::move(first), std::move(second)});
    }
    return plan;
}

SwapPlan identity_swap_plan(int d, int n_points) {
    SwapPlan plan;
    plan.n_points = n_points;
    plan.steps.resize(d);
    plan.validate();
    return plan;
}

namespace {

void add_controlled_permutation(Circuit &circuit, const Permutation &perm, int control, const RegisterLayout &layout) {
    for (const auto &[p, q] : perm.swaps()) {
        circuit.add(GateOp::cswap(control, layout.feature[p], layout.feature[q]));
        circuit.add(GateOp::cswap(control, layout.label[p], layout.label[q]));
    }
}

SwapPlan resolve_plan(const LabeledDataset &dataset, const EnsembleConfig &config) {
    SwapPlan plan = config.swap_plan ? *config.swap_plan : default_swap_plan(config.d, static_cast<int>(dataset.size()));
    plan.validate();
    if (plan.d() != config.d) {
        throw ValidationError("swap plan has d = " + std::to_string(plan.d()) + " but config asks for d = " +
                              std::to_string(config.d));
    }
    if (plan.n_points != static_cast<int>(dataset.size())) {
        throw ValidationError("swap plan covers " + std::to_string(plan.n_points) + " points but dataset has " +
                              std::to_string(dataset.size()));
    }
    return plan;
}

}  // namespace

Circuit build_sampling_stage(const SwapPlan &plan, const RegisterLayout &layout) {
    layout.validate();
    plan.validate();
    if (plan.d() != layout.d()) {
        throw ValidationError("swap plan has d = " + std::to_string(plan.d()) + " but layout has " +
                              std::to_string(layout.d()) + " control qubits");
    }
    if (plan.n_points > layout.n_points()) {
        throw ValidationError("swap plan touches qubits outside the data register");
    }
    Circuit circuit(layout.num_qubits());
    for (int c : layout.control) {
        circuit.add(GateOp::h(c));
    }
    for (int i = 0; i < plan.d(); ++i) {
        const int control = layout.control[i];
        add_controlled_permutation(circuit, plan.steps[i].first, control, layout);
        circuit.add(GateOp::x(control));
        add_controlled_permutation(circuit, plan.steps[i].second, control, layout);
    }
    return circuit;
}

int full_circuit_qubits(int d, int n_points) {
    return d + 2 * n_points + 2;
}

Circuit build_ensemble_circuit(const LabeledDataset &dataset, FeatureVector2D test, const SwapPlan &plan) {
    plan.validate();
    const int n = static_cast<int>(dataset.size());
    const int needed = full_circuit_qubits(plan.d(), n);
    if (needed > kMaxQubits) {
        throw CapacityError("full-circuit mode needs " + std::to_string(needed) + " qubits (d + 2N + 2 with d = " +
                            std::to_string(plan.d()) + ", N = " + std::to_string(n) + "), limit is " +
                            std::to_string(kMaxQubits));
    }
    const auto layout = RegisterLayout::standard(plan.d(), n);
    Circuit circuit(layout.num_qubits());
    circuit.append(build_state_prep(dataset, test, layout), "state_prep");
    circuit.append(build_sampling_stage(plan, layout), "sampling");
    circuit.append(build_cosine_classifier({layout.feature[0], layout.label[0], layout.test, layout.prediction},
                                           layout.num_qubits()),
                   std::string(kClassifierSegment));
    return circuit;
}

PredictionResult run_ensemble_full(const LabeledDataset &dataset, FeatureVector2D test, const EnsembleConfig &config) {
    const int needed = full_circuit_qubits(config.d, static_cast<int>(dataset.size()));
    if (needed > kMaxQubits) {
        throw CapacityError("full-circuit mode needs " + std::to_string(needed) + " qubits (d + 2N + 2 with d = " +
                            std::to_string(config.d) + ", N = " + std::to_string(dataset.size()) +
                            "), limit is " + std::to_string(kMaxQubits));
    }
    const SwapPlan plan = resolve_plan(dataset, config);
    const Circuit circuit = build_ensemble_circuit(dataset, test, plan);
    auto state = StateVector::zero(circuit.num_qubits());
    run_circuit(state, circuit);
    const auto layout = RegisterLayout::standard(plan.d(), static_cast<int>(dataset.size()));
    PredictionResult result;
    result.prob_one = measure_prob_one(state, layout.prediction, config.measurement);
    result.decision = decide(result.prob_one);
    return result;
}

PredictionResult run_ensemble_trajectories(const LabeledDataset &dataset, FeatureVector2D test,
                                           const EnsembleConfig &config) {
    if (config.d > kMaxTrajectoryBits) {
        throw CapacityError("trajectory mode supports d <= " + std::to_string(kMaxTrajectoryBits) + ", got " +
                            std::to_string(config.d));
    }
    const SwapPlan plan = resolve_plan(dataset, config);
    encode_vector(test);
    std::vector<double> probs(plan.trajectories());
    for (std::uint64_t b = 0; b < plan.trajectories(); ++b) {
        const auto &point = dataset[static_cast<std::size_t>(plan.active_point(b))];
        Measurement m = ExactMeasurement{};
        if (const auto *shots = std::get_if<ShotMeasurement>(&config.measurement)) {
            m = ShotMeasurement{shots->shots, derive_seed(shots->seed, "trajectory", {b})};
        }
        probs[b] = classify_single(point.x, point.label, test, m).prob_one;
    }
    PredictionResult result;
    result.prob_one = pairwise_mean(probs);
    result.decision = decide(result.prob_one);
    result.per_trajectory = std::move(probs);
    return result;
}

PredictionResult run_ensemble(const LabeledDataset &dataset, FeatureVector2D test, const EnsembleConfig &config) {
    return config.mode == EnsembleMode::kFullCircuit ? run_ensemble_full(dataset, test, config)
                                                     : run_ensemble_trajectories(dataset, test, config);
}

namespace {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) {
            s += x;
        }
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

double pairwise_mean(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("mean of an empty list");
    }
    return pairwise_sum(values) / static_cast<double>(values.size());
}

}  // namespace qens
