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

#include "qens/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <utility>

#include "qens/errors.hpp"
#include "qens/seeding.hpp"

namespace qens {

namespace {

std::uint64_t insert_zero_bit(std::uint64_t value, int position) {
    const std::uint64_t low = value & ((std::uint64_t{1} << position) - 1);
    return ((value >> position) << (position + 1)) | low;
}

bool is_unitary(const Matrix2 &m) {
    // Columns must be orthonormal.
    const Complex c00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
    const Complex c11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    const Complex c01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
    return std::abs(c00 - 1.0) <= kUnitaryTolerance && std::abs(c11 - 1.0) <= kUnitaryTolerance &&
           std::abs(c01) <= kUnitaryTolerance;
}

struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

ControlMask control_mask(const std::vector<Control> &controls) {
    ControlMask result;
    for (const auto &c : controls) {
        const std::uint64_t bit = std::uint64_t{1} << c.qubit;
        result.mask |= bit;
        if (c.value) {
            result.value |= bit;
        }
    }
    return result;
}

void apply_single(std::span<Complex> amps, int num_qubits, const Matrix2 &m, int target, ControlMask ctrl) {
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t half = std::uint64_t{1} << (num_qubits - 1);
    for (std::uint64_t k = 0; k < half; ++k) {
        const std::uint64_t i0 = insert_zero_bit(k, target);
        if ((i0 & ctrl.mask) != ctrl.value) {
            continue;
        }
        const std::uint64_t i1 = i0 | tbit;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_swap(std::span<Complex> amps, int num_qubits, int a, int b, ControlMask ctrl) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    const std::uint64_t lo_bit = std::uint64_t{1} << lo;
    const std::uint64_t hi_bit = std::uint64_t{1} << hi;
    const std::uint64_t quarter = std::uint64_t{1} << (num_qubits - 2);
    for (std::uint64_t k = 0; k < quarter; ++k) {
        const std::uint64_t base = insert_zero_bit(insert_zero_bit(k, lo), hi);
        if ((base & ctrl.mask) != ctrl.value) {
            continue;
        }
        std::swap(amps[base | lo_bit], amps[base | hi_bit]);
    }
}

}  // namespace

StateVector StateVector::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[0] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw ValidationError("amplitude count " + std::to_string(n) + " is not a power of two >= 2");
    }
    const int num_qubits = std::countr_zero(n);
    if (num_qubits > kMaxQubits) {
        throw CapacityError("qubit count " + std::to_string(num_qubits) + " exceeds " + std::to_string(kMaxQubits));
    }
    StateVector state(num_qubits, std::move(amplitudes));
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        throw ValidationError("amplitudes are not normalized");
    }
    return state;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

StateVector new_zero_state(int num_qubits) {
    return StateVector::zero(num_qubits);
}

namespace gates {

Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
}

Matrix2 pauli_x() {
    return {0, 1, 1, 0};
}

Matrix2 rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c};
}

}  // namespace gates

GateOp GateOp::single(const Matrix2 &matrix, int target, std::string name) {
    return GateOp{GateKind::kSingle, matrix, {target}, {}, std::move(name)};
}

GateOp GateOp::controlled(const Matrix2 &matrix, int target, std::vector<Control> controls, std::string name) {
    return GateOp{GateKind::kControlled, matrix, {target}, std::move(controls), std::move(name)};
}

GateOp GateOp::swap(int a, int b) {
    return GateOp{GateKind::kSwap, Matrix2{1, 0, 0, 1}, {a, b}, {}, "SWAP"};
}

GateOp GateOp::controlled_swap(std::vector<Control> controls, int a, int b) {
    return GateOp{GateKind::kControlledSwap, Matrix2{1, 0, 0, 1}, {a, b}, std::move(controls), "CSWAP"};
}

GateOp GateOp::h(int target) {
    return single(gates::hadamard(), target, "H");
}

GateOp GateOp::x(int target) {
    return single(gates::pauli_x(), target, "X");
}

GateOp GateOp::rotation(int target, double angle) {
    return single(gates::rotation(angle), target, "R");
}

GateOp GateOp::cx(int control, int target) {
    return controlled(gates::pauli_x(), target, {{control, 1}}, "CX");
}

GateOp GateOp::cswap(int control, int a, int b) {
    return controlled_swap({{control, 1}}, a, b);
}

void GateOp::validate(int num_qubits) const {
    const bool swap_kind = kind == GateKind::kSwap || kind == GateKind::kControlledSwap;
    const bool controlled_kind = kind == GateKind::kControlled || kind == GateKind::kControlledSwap;
    const std::size_t want_targets = swap_kind ? 2 : 1;
    if (targets.size() != want_targets) {
        throw ValidationError(name + ": expected " + std::to_string(want_targets) + " target(s), got " +
                              std::to_string(targets.size()));
    }
    if (controlled_kind == controls.empty()) {
        throw ValidationError(name + ": control list does not match gate kind");
    }
    std::vector<int> used(targets);
    for (const auto &c : controls) {
        if (c.value != 0 && c.value != 1) {
            throw ValidationError(name + ": control value must be 0 or 1");
        }
        used.push_back(c.qubit);
    }
    for (int q : used) {
        if (q < 0 || q >= num_qubits) {
            throw ValidationError(name + ": qubit " + std::to_string(q) + " outside register of " +
                                  std::to_string(num_qubits));
        }
    }
    std::sort(used.begin(), used.end());
    if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
        throw ValidationError(name + ": target and control qubits must be pairwise distinct");
    }
    if (!swap_kind && !is_unitary(matrix)) {
        throw ValidationError(name + ": matrix is not unitary");
    }
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("circuit width " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
}

Circuit &Circuit::add(GateOp op) {
    op.validate(num_qubits_);
    ops_.push_back(std::move(op));
    return *this;
}

Circuit &Circuit::append(const Circuit &other, std::string name) {
    if (other.num_qubits_ > num_qubits_) {
        throw ValidationError("cannot append a " + std::to_string(other.num_qubits_) + "-qubit circuit to a " +
                              std::to_string(num_qubits_) + "-qubit circuit");
    }
    const std::size_t first = ops_.size();
    for (const auto &seg : other.segments_) {
        segments_.push_back({seg.name, first + seg.first_op, seg.op_count});
    }
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    segments_.push_back({std::move(name), first, other.ops_.size()});
    return *this;
}

std::size_t Circuit::count_segments(std::string_view name) const {
    return static_cast<std::size_t>(
        std::count_if(segments_.begin(), segments_.end(), [&](const Segment &s) { return s.name == name; }));
}

void apply_gate(StateVector &state, const GateOp &op) {
    op.validate(state.num_qubits());
    const ControlMask ctrl = control_mask(op.controls);
    switch (op.kind) {
        case GateKind::kSingle:
        case GateKind::kControlled:
            apply_single(state.amplitudes(), state.num_qubits(), op.matrix, op.targets[0], ctrl);
            break;
        case GateKind::kSwap:
        case GateKind::kControlledSwap:
            apply_swap(state.amplitudes(), state.num_qubits(), op.targets[0], op.targets[1], ctrl);
            break;
    }
}

void run_circuit(StateVector &state, const Circuit &circuit) {
    if (circuit.num_qubits() > state.num_qubits()) {
        throw ValidationError("circuit is wider than the state");
    }
    for (const auto &op : circuit.ops()) {
        apply_gate(state, op);
    }
}

double prob_one(const StateVector &state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw IndexError("qubit " + std::to_string(qubit) + " outside register of " +
                         std::to_string(state.num_qubits()));
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const auto amps = state.amplitudes();
    double total = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            total += std::norm(amps[i]);
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

ShotResult sample_shots(const StateVector &state, int qubit, std::int64_t shots, std::uint64_t seed) {
    if (shots <= 0) {
        throw ValidationError("shot count must be positive");
    }
    const double p = prob_one(state, qubit);
    std::mt19937_64 rng(seed);
    ShotResult result;
    result.shots = shots;
    for (std::int64_t s = 0; s < shots; ++s) {
        ++result.counts[uniform01(rng) < p ? 1 : 0];
    }
    result.estimated_prob_one = static_cast<double>(result.counts[1]) / static_cast<double>(shots);
    return result;
}

}  // namespace qens
