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

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qens/qsim.hpp"

namespace qens {

struct FeatureVector2D {
    double x1 = 0.0;
    double x2 = 0.0;

    double norm() const;
    bool operator==(const FeatureVector2D &) const = default;
};

struct LabeledPoint {
    FeatureVector2D x;
    int label = 0;
};

/// Non-empty ordered list of 2D points with binary labels, every point encodable.
class LabeledDataset {
   public:
    LabeledDataset() = default;
    /// Throws ValidationError for an empty list or a label outside {0, 1}, EncodingError for a zero vector.
    explicit LabeledDataset(std::vector<LabeledPoint> points);

    std::size_t size() const {
        return points_.size();
    }
    bool empty() const {
        return points_.empty();
    }
    const LabeledPoint &operator[](std::size_t i) const {
        return points_[i];
    }
    const std::vector<LabeledPoint> &points() const {
        return points_;
    }
    auto begin() const {
        return points_.begin();
    }
    auto end() const {
        return points_.end();
    }

    /// Points at `indices`, in that order.
    LabeledDataset subset(std::span<const std::size_t> indices) const;

   private:
    std::vector<LabeledPoint> points_;
};

/// Single-qubit amplitudes of an encoded vector.
struct QubitAmplitudes {
    double amp0 = 1.0;
    double amp1 = 0.0;
};

/// (x1, x2) / ||(x1, x2)||. Throws EncodingError for a zero or non-finite vector.
QubitAmplitudes encode_vector(FeatureVector2D v);

/// Angle in (-pi, pi] with (cos, sin) equal to encode_vector(v).
double encoding_angle(FeatureVector2D v);

/// Qubit assignment for the ensemble circuit.
///
/// `feature[p]` and `label[p]` hold data position p. Position 0 is the one the classifier reads.
struct RegisterLayout {
    std::vector<int> control;
    std::vector<int> feature;
    std::vector<int> label;
    int test = 0;
    int prediction = 0;

    /// control = [0, d), feature = [d, d+n), label = [d+n, d+2n), then test and prediction.
    static RegisterLayout standard(int d, int n_points);

    int num_qubits() const {
        return static_cast<int>(control.size() + feature.size() + label.size()) + 2;
    }
    int d() const {
        return static_cast<int>(control.size());
    }
    int n_points() const {
        return static_cast<int>(feature.size());
    }

    /// Throws ValidationError unless every index range is disjoint and the layout is dense in [0, num_qubits).
    void validate() const;
};

/// Rotates every feature qubit and the test qubit to its encoded amplitudes and flips label qubits of
/// class-1 points. Control and prediction qubits are left alone.
Circuit build_state_prep(const LabeledDataset &dataset, FeatureVector2D test, const RegisterLayout &layout);

/// Reads a `x1,x2,y` CSV. Throws ParseError (with line number) or ValidationError for an empty body.
LabeledDataset read_dataset_csv(std::istream &in);
LabeledDataset load_dataset_csv(const std::filesystem::path &path);
void write_dataset_csv(std::ostream &out, const LabeledDataset &dataset);

}  // namespace qens
