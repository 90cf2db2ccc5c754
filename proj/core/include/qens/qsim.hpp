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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qens {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix: {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

/// Largest register the simulator will allocate (2^26 amplitudes, 1 GiB).
inline constexpr int kMaxQubits = 26;
/// Tolerance for U^dagger U = I when validating gate matrices.
inline constexpr double kUnitaryTolerance = 1e-10;
/// Tolerance for unit norm of amplitude vectors supplied by callers.
inline constexpr double kNormTolerance = 1e-10;

// Qubit q is bit q of the basis-state index (qubit 0 is least significant).

/// Dense state vector of `num_qubits` qubits.
class StateVector {
   public:
    /// |0...0> on `num_qubits` qubits. Throws CapacityError outside [1, kMaxQubits].
    static StateVector zero(int num_qubits);
    /// Wraps caller-provided amplitudes. Length must be a power of two and the norm must be 1.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    int num_qubits() const {
        return num_qubits_;
    }
    std::size_t size() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    std::span<Complex> amplitudes() {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t index) const {
        return amplitudes_[index];
    }
    double norm_squared() const;

   private:
    StateVector(int num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    }

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Same as StateVector::zero.
StateVector new_zero_state(int num_qubits);

enum class GateKind : std::uint8_t {
    kSingle,
    kControlled,
    kSwap,
    kControlledSwap,
};

/// Condition on one qubit: the gate acts only where that qubit equals `value`.
struct Control {
    int qubit;
    int value;

    bool operator==(const Control &) const = default;
};

/// One gate application.
///
/// Single-qubit kinds use `matrix` on `targets[0]`; swap kinds exchange `targets[0]` and
/// `targets[1]`. `controls` restrict the action to basis states that match every condition.
struct GateOp {
    GateKind kind = GateKind::kSingle;
    Matrix2 matrix{1, 0, 0, 1};
    std::vector<int> targets;
    std::vector<Control> controls;
    std::string name;

    static GateOp single(const Matrix2 &matrix, int target, std::string name);
    static GateOp controlled(const Matrix2 &matrix, int target, std::vector<Control> controls, std::string name);
    static GateOp swap(int a, int b);
    static GateOp controlled_swap(std::vector<Control> controls, int a, int b);

    static GateOp h(int target);
    static GateOp x(int target);
    /// Real-plane rotation taking |0> to cos(angle)|0> + sin(angle)|1>.
    static GateOp rotation(int target, double angle);
    /// X on `target` where `control` is 1.
    static GateOp cx(int control, int target);
    /// SWAP(a, b) where `control` is 1 (Fredkin gate).
    static GateOp cswap(int control, int a, int b);

    /// Throws ValidationError if the op is malformed or does not fit `num_qubits`.
    void validate(int num_qubits) const;
};

namespace gates {
Matrix2 hadamard();
Matrix2 pauli_x();
Matrix2 rotation(double angle);
}  // namespace gates

/// Named contiguous run of ops inside a Circuit.
struct Segment {
    std::string name;
    std::size_t first_op;
    std::size_t op_count;
};

/// Ordered gate list over a fixed number of qubits.
class Circuit {
   public:
    explicit Circuit(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    const std::vector<GateOp> &ops() const {
        return ops_;
    }
    const std::vector<Segment> &segments() const {
        return segments_;
    }

    /// Validates `op` against this circuit and appends it.
    Circuit &add(GateOp op);
    /// Appends every op of `other` (which must not be wider), recording them as a segment named `name`.
    Circuit &append(const Circuit &other, std::string name);

    std::size_t count_segments(std::string_view name) const;

   private:
    int num_qubits_;
    std::vector<GateOp> ops_;
    std::vector<Segment> segments_;
};

/// Applies `op` to `state` in place. Validates the op first.
void apply_gate(StateVector &state, const GateOp &op);

/// Applies every op of `circuit` in order. The circuit must not be wider than the state.
void run_circuit(StateVector &state, const Circuit &circuit);

/// Probability of observing 1 on `qubit`.
double prob_one(const StateVector &state, int qubit);

struct ShotResult {
    std::int64_t shots = 0;
    std::array<std::int64_t, 2> counts{0, 0};
    double estimated_prob_one = 0.0;
};

/// Draws `shots` independent single-qubit measurements of `qubit`. Deterministic for a fixed seed.
ShotResult sample_shots(const StateVector &state, int qubit, std::int64_t shots, std::uint64_t seed);

}  // namespace qens
