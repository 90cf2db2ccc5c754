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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qens/encoding.hpp"
#include "qens/ensemble.hpp"
#include "qens/qsim.hpp"

// Classical ground truth used to check the simulator and the quantum ensemble.

namespace qens::oracle {

/// Widest register for which dense 2^n x 2^n operators are built.
inline constexpr int kMaxDenseQubits = 14;

/// a.b / (|a| |b|). Throws DomainError for a zero vector.
double cosine_similarity(FeatureVector2D a, FeatureVector2D b);

/// Closed-form class-1 probability of the cosine classifier: p = 1/2 + cos^2/2 for label 1, 1 - p for label 0.
double prob_class1(FeatureVector2D train, int label, FeatureVector2D test);

/// Mean of prob_class1 over the points at `selection` (repeats allowed).
double classical_bagging(const LabeledDataset &dataset, FeatureVector2D test, std::span<const std::size_t> selection);

struct EnsembleErrorParams {
    double e_model = 0.0;
    double rho = 0.0;
    std::uint64_t b = 1;
};

/// (1 + rho (B - 1)) / B * E_model.
double ensemble_error(const EnsembleErrorParams &p);

/// Square complex matrix in row-major order.
class DenseMatrix {
   public:
    explicit DenseMatrix(std::size_t dim);

    static DenseMatrix identity(std::size_t dim);

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    DenseMatrix operator*(const DenseMatrix &rhs) const;
    std::vector<Complex> operator*(std::span<const Complex> v) const;

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// The full-register matrix of `op` on `num_qubits` qubits, built entry by entry from its definition.
DenseMatrix dense_operator(const GateOp &op, int num_qubits);

/// Sampling-stage output computed with explicit dense matrices.
///
/// `initial_data_state` holds 2N qubits: features at [0, N), labels at [N, 2N). The result places
/// the d control qubits at [0, d) and the data register above them, matching RegisterLayout::standard
/// without the test and prediction qubits.
StateVector brute_force_state(const SwapPlan &plan, const StateVector &initial_data_state);

/// (1/sqrt(2^d)) sum_b |b> V_b |data>, assembled from SwapPlan::arrangement rather than from gates.
StateVector trajectory_expansion(const SwapPlan &plan, const StateVector &initial_data_state);

}  // namespace qens::oracle
