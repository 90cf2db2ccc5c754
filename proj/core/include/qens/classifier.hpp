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
#include <string_view>
#include <variant>
#include <vector>

#include "qens/encoding.hpp"
#include "qens/qsim.hpp"

namespace qens {

/// Segment name given to every cosine-classifier block appended to a larger circuit.
inline constexpr std::string_view kClassifierSegment = "cosine_classifier";

struct CosineClassifierSpec {
    int train_qubit = 0;
    int label_qubit = 1;
    int test_qubit = 2;
    int prediction_qubit = 3;
};

/// Read probabilities straight from the amplitudes.
struct ExactMeasurement {};

/// Estimate probabilities from `shots` seeded single-qubit measurements.
struct ShotMeasurement {
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
};

using Measurement = std::variant<ExactMeasurement, ShotMeasurement>;

struct PredictionResult {
    double prob_one = 0.0;
    int decision = 0;
    /// Per-trajectory class-1 probabilities, when they were computed one by one.
    std::optional<std::vector<double>> per_trajectory;
};

/// 1 iff prob_one > 0.5. A tie resolves to 0.
int decide(double prob_one);

/// Swap test between train and test qubits on the prediction ancilla, then CX from the label qubit.
///
/// Afterwards Pr(prediction = 1) = 1/2 - cos^2/2 for a class-0 training point and 1/2 + cos^2/2 for a
/// class-1 point, where cos is the cosine similarity of the two encoded vectors.
Circuit build_cosine_classifier(const CosineClassifierSpec &spec, int num_qubits);

/// Reads Pr(qubit = 1) from `state` according to `measurement`.
double measure_prob_one(const StateVector &state, int qubit, const Measurement &measurement);

/// Runs the 4-qubit cosine classifier for one training point.
PredictionResult classify_single(FeatureVector2D train, int label, FeatureVector2D test, const Measurement &measurement);

}  // namespace qens
