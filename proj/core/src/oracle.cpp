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

#include "qens/oracle.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qens/errors.hpp"

namespace qens::oracle {

double cosine_similarity(FeatureVector2D a, FeatureVector2D b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        throw DomainError("cosine similarity of a zero vector");
    }
    return (a.x1 * b.x1 + a.x2 * b.x2) / (na * nb);
}

double prob_class1(FeatureVector2D train, int label, FeatureVector2D test) {
    const double c = cosine_similarity(train, test);
    const double same = 0.5 + 0.5 * c * c;
    return label == 1 ? same : 1.0 - same;
}

double classical_bagging(const LabeledDataset &dataset, FeatureVector2D test, std::span<const std::size_t> selection) {
    if (selection.empty()) {
        throw ValidationError("empty selection");
    }
    double total = 0.0;
    for (std::size_t i : selection) {
        if (i >= dataset.size()) {
            throw IndexError("selection index " + std::to_string(i) + " outside dataset of " +
                             std::to_string(dataset.size()));
        }
        total += prob_class1(dataset[i].x, dataset[i].label, test);
    }
    return total / static_cast<double>(selection.size());
}

double ensemble_error(const EnsembleErrorParams &p) {
    if (p.e_model < 0.0 || p.rho < 0.0 || p.rho > 1.0 || p.b < 1) {
        throw DomainError("ensemble error needs e_model >= 0, rho in [0, 1], B >= 1");
    }
    const double b = static_cast<double>(p.b);
    return (1.0 + p.rho * (b - 1.0)) / b * p.e_model;
}

DenseMatrix::DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
}

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix &rhs) const {
    if (rhs.dim_ != dim_) {
        throw ValidationError("matrix dimension mismatch");
    }
    DenseMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

std::vector<Complex> DenseMatrix::operator*(std::span<const Complex> v) const {
    if (v.size() != dim_) {
        throw ValidationError("vector length does not match matrix dimension");
    }
    std::vector<Complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < dim_; ++j) {
            acc += (*this)(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

namespace {

void check_dense_capacity(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
        throw CapacityError("dense oracle supports 1.." + std::to_string(kMaxDenseQubits) + " qubits, got " +
                            std::to_string(num_qubits));
    }
}

int bit(std::uint64_t x, int q) {
    return static_cast<int>((x >> q) & 1);
}

}  // namespace

DenseMatrix dense_operator(const GateOp &op, int num_qubits) {
    check_dense_capacity(num_qubits);
    op.validate(num_qubits);
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix m(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        bool active = true;
        for (const auto &c : op.controls) {
            active = active && bit(col, c.qubit) == c.value;
        }
        if (!active) {
            m(col, col) = 1.0;
            continue;
        }
        if (op.kind == GateKind::kSwap || op.kind == GateKind::kControlledSwap) {
            const int a = op.targets[0];
            const int b = op.targets[1];
            std::uint64_t row = col & ~((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
            row |= static_cast<std::uint64_t>(bit(col, a)) << b;
            row |= static_cast<std::uint64_t>(bit(col, b)) << a;
            m(row, col) = 1.0;
        } else {
            const int t = op.targets[0];
            const int in = bit(col, t);
            const std::uint64_t base = col & ~(std::uint64_t{1} << t);
            m(base, col) += op.matrix[0 * 2 + in];
            m(base | (std::uint64_t{1} << t), col) += op.matrix[1 * 2 + in];
        }
    }
    return m;
}

namespace {

// Data-register basis index after moving the content of position source_of[p] to position p.
std::uint64_t permute_data_index(std::uint64_t x, const std::vector<int> &source_of) {
    const int n = static_cast<int>(source_of.size());
    std::uint64_t out = 0;
    for (int p = 0; p < n; ++p) {
        out |= static_cast<std::uint64_t>(bit(x, source_of[p])) << p;
        out |= static_cast<std::uint64_t>(bit(x, n + source_of[p])) << (n + p);
    }
    return out;
}

std::vector<int> sources_of(const Permutation &perm, int n) {
    std::vector<int> source_of(n);
    std::iota(source_of.begin(), source_of.end(), 0);
    for (const auto &[p, q] : perm.swaps()) {
        std::swap(source_of[p], source_of[q]);
    }
    return source_of;
}

// |c = 1> <c = 1| (x) U  +  |c = 0> <c = 0| (x) I, with U permuting the data register.
DenseMatrix controlled_permutation(const Permutation &perm, int control, int d, int n_points) {
    const std::size_t dim = std::size_t{1} << (d + 2 * n_points);
    const auto source_of = sources_of(perm, n_points);
    const std::uint64_t control_mask = (std::uint64_t{1} << d) - 1;
    DenseMatrix m(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        if (!bit(col, control)) {
            m(col, col) = 1.0;
            continue;
        }
        const std::uint64_t data = col >> d;
        const std::uint64_t row = (permute_data_index(data, source_of) << d) | (col & control_mask);
        m(row, col) = 1.0;
    }
    return m;
}

DenseMatrix walsh_hadamard(int d, int n_points) {
    const std::size_t dim = std::size_t{1} << (d + 2 * n_points);
    const std::uint64_t control_mask = (std::uint64_t{1} << d) - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << d));
    DenseMatrix m(dim);
    for (std::uint64_t row = 0; row < dim; ++row) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            if ((row & ~control_mask) != (col & ~control_mask)) {
                continue;
            }
            const int parity = std::popcount(row & col & control_mask) & 1;
            m(row, col) = parity ? -scale : scale;
        }
    }
    return m;
}

DenseMatrix pauli_x_on(int qubit, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    DenseMatrix m(dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        m(col ^ (std::uint64_t{1} << qubit), col) = 1.0;
    }
    return m;
}

std::vector<Complex> embed_data_state(const StateVector &data, int d) {
    std::vector<Complex> full(data.size() << d);
    for (std::size_t i = 0; i < data.size(); ++i) {
        full[i << d] = data[i];
    }
    return full;
}

void check_plan_matches(const SwapPlan &plan, const StateVector &data) {
    plan.validate();
    if (data.num_qubits() != 2 * plan.n_points) {
        throw ValidationError("data state has " + std::to_string(data.num_qubits()) + " qubits, plan needs " +
                              std::to_string(2 * plan.n_points));
    }
}

}  // namespace

StateVector brute_force_state(const SwapPlan &plan, const StateVector &initial_data_state) {
    check_plan_matches(plan, initial_data_state);
    const int d = plan.d();
    const int n = plan.n_points;
    const int num_qubits = d + 2 * n;
    check_dense_capacity(num_qubits);

    auto state = embed_data_state(initial_data_state, d);
    state = walsh_hadamard(d, n) * std::span<const Complex>(state);
    for (int i = 0; i < d; ++i) {
        state = controlled_permutation(plan.steps[i].first, i, d, n) * std::span<const Complex>(state);
        state = pauli_x_on(i, num_qubits) * std::span<const Complex>(state);
        state = controlled_permutation(plan.steps[i].second, i, d, n) * std::span<const Complex>(state);
    }
    return StateVector::from_amplitudes(std::move(state));
}

StateVector trajectory_expansion(const SwapPlan &plan, const StateVector &initial_data_state) {
    check_plan_matches(plan, initial_data_state);
    const int d = plan.d();
    const int n = plan.n_points;
    if (d + 2 * n > kMaxQubits) {
        throw CapacityError("trajectory expansion exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(plan.trajectories()));
    std::vector<Complex> full(initial_data_state.size() << d);
    for (std::uint64_t b = 0; b < plan.trajectories(); ++b) {
        const auto source_of = plan.arrangement(b);
        for (std::uint64_t x = 0; x < initial_data_state.size(); ++x) {
            full[(permute_data_index(x, source_of) << d) | b] += scale * initial_data_state[x];
        }
    }
    return StateVector::from_amplitudes(std::move(full));
}

}  // namespace qens::oracle
