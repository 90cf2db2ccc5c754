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

#include "qens/classifier.hpp"

#include <algorithm>
#include <string>

#include "qens/errors.hpp"

namespace qens {

int decide(double prob_one) {
    return prob_one > 0.5 ? 1 : 0;
}

Circuit build_cosine_classifier(const CosineClassifierSpec &spec, int num_qubits) {
    std::vector<int> qubits{spec.train_qubit, spec.label_qubit, spec.test_qubit, spec.prediction_qubit};
    std::sort(qubits.begin(), qubits.end());
    if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
        throw ValidationError("cosine classifier qubits must be distinct");
    }
    Circuit circuit(num_qubits);
    circuit.add(GateOp::h(spec.prediction_qubit));
    circuit.add(GateOp::cswap(spec.prediction_qubit, spec.train_qubit, spec.test_qubit));
    circuit.add(GateOp::h(spec.prediction_qubit));
    circuit.add(GateOp::cx(spec.label_qubit, spec.prediction_qubit));
    return circuit;
}

double measure_prob_one(const StateVector &state, int qubit, const Measurement &measurement) {
    if (const auto *shots = std::get_if<ShotMeasurement>(&measurement)) {
        return sample_shots(state, qubit, shots->shots, shots->seed).estimated_prob_one;
    }
    return prob_one(state, qubit);
}

PredictionResult classify_single(FeatureVector2D train, int label, FeatureVector2D test, const Measurement &measurement) {
    const LabeledDataset single(std::vector<LabeledPoint>{{train, label}});
    const auto layout = RegisterLayout::standard(0, 1);
    Circuit circuit(layout.num_qubits());
    circuit.append(build_state_prep(single, test, layout), "state_prep");
    circuit.append(build_cosine_classifier({layout.feature[0], layout.label[0], layout.test, layout.prediction},
                                           layout.num_qubits()),
                   std::string(kClassifierSegment));
    auto state = StateVector::zero(layout.num_qubits());
    run_circuit(state, circuit);
    PredictionResult result;
    result.prob_one = measure_prob_one(state, layout.prediction, measurement);
    result.decision = decide(result.prob_one);
    return result;
}

}  // namespace qens
