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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qens/classifier.hpp"
#include "qens/encoding.hpp"
#include "qens/qsim.hpp"

namespace qens {

/// Largest control register accepted in trajectory mode (B = 2^14 classifiers).
inline constexpr int kMaxTrajectoryBits = 14;

/// Rearrangement of data positions, stored as the swaps that realize it, applied in order.
///
/// A swap (p, q) exchanges the feature qubits and the label qubits of positions p and q together.
class Permutation {
   public:
    Permutation() = default;
    explicit Permutation(std::vector<std::pair<int, int>> swaps);

    /// Permutation after which position p holds whatever was at `source_of[p]`.
    static Permutation from_sources(std::span<const int> source_of);
    /// Cyclic shift: position p receives the content of position (p + shift) mod n.
    static Permutation rotation(int n, int shift);

    const std::vector<std::pair<int, int>> &swaps() const {
        return swaps_;
    }
    bool empty() const {
        return swaps_.empty();
    }
    /// Applies the swaps to `arrangement`, where arrangement[p] names the item at position p.
    void apply(std::vector<int> &arrangement) const;
    /// One past the largest position touched (0 for the empty permutation).
    int extent() const;

   private:
    std::vector<std::pair<int, int>> swaps_;
};

/// The two alternative data transformations of one control qubit.
struct SwapStep {
    Permutation first;   // applied where the control qubit ends in 0
    Permutation second;  // applied where the control qubit ends in 1
};

/// Per-step transformation pairs for a d-qubit control register over `n_points` data positions.
///
/// Step i (0-based) is driven by control qubit i. Trajectory b applies, for i = 0..d-1 in order,
/// `steps[i].second` if bit i of b is set and `steps[i].first` otherwise.
struct SwapPlan {
    int n_points = 1;
    std::vector<SwapStep> steps;

    int d() const {
        return static_cast<int>(steps.size());
    }
    std::uint64_t trajectories() const {
        return std::uint64_t{1} << steps.size();
    }
    /// Final arrangement of trajectory b: element p is the original point now at position p.
    std::vector<int> arrangement(std::uint64_t b) const;
    /// Original index of the point sitting at the classifier-read position 0 in trajectory b.
    int active_point(std::uint64_t b) const;
    void validate() const;
};

/// Plan where trajectory b reads point (b mod n_points). Step i pairs the identity with a cyclic
/// shift by 2^i, so trajectories read distinct points whenever 2^d <= n_points.
SwapPlan default_swap_plan(int d, int n_points);

/// Plan with both transformations of every step drawn uniformly from all permutations.
SwapPlan random_swap_plan(int d, int n_points, std::uint64_t seed);

/// Plan whose transformations are all the identity.
SwapPlan identity_swap_plan(int d, int n_points);

/// Hadamards on the control register followed by, per step, controlled-first, X, controlled-second.
Circuit build_sampling_stage(const SwapPlan &plan, const RegisterLayout &layout);

enum class EnsembleMode {
    kFullCircuit,
    kTrajectories,
};

struct EnsembleConfig {
    int d = 1;
    EnsembleMode mode = EnsembleMode::kFullCircuit;
    Measurement measurement = ExactMeasurement{};
    /// Defaults to default_swap_plan(d, dataset size).
    std::optional<SwapPlan> swap_plan;
};

/// d + 2N + 2.
int full_circuit_qubits(int d, int n_points);

/// State preparation, sampling stage and a single cosine classifier on data position 0.
Circuit build_ensemble_circuit(const LabeledDataset &dataset, FeatureVector2D test, const SwapPlan &plan);

/// Simulates the whole entangled circuit and measures only the prediction qubit.
PredictionResult run_ensemble_full(const LabeledDataset &dataset, FeatureVector2D test, const EnsembleConfig &config);

/// Runs one cosine classifier per trajectory and averages the class-1 probabilities.
PredictionResult run_ensemble_trajectories(const LabeledDataset &dataset, FeatureVector2D test,
                                           const EnsembleConfig &config);

PredictionResult run_ensemble(const LabeledDataset &dataset, FeatureVector2D test, const EnsembleConfig &config);

/// Mean computed by pairwise summation, so the result does not depend on how work was split.
double pairwise_mean(std::span<const double> values);

}  // namespace qens
