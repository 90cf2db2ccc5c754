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

#include "qens/encoding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qens/errors.hpp"

namespace qens {

double FeatureVector2D::norm() const {
    return std::hypot(x1, x2);
}

LabeledDataset::LabeledDataset(std::vector<LabeledPoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw ValidationError("dataset is empty");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto &p = points_[i];
        if (p.label != 0 && p.label != 1) {
            throw ValidationError("point " + std::to_string(i) + " has label " + std::to_string(p.label) +
                                  ", expected 0 or 1");
        }
        encode_vector(p.x);
    }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
    std::vector<LabeledPoint> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= points_.size()) {
            throw IndexError("point index " + std::to_string(i) + " outside dataset of " +
                             std::to_string(points_.size()));
        }
        picked.push_back(points_[i]);
    }
    return LabeledDataset(std::move(picked));
}

QubitAmplitudes encode_vector(FeatureVector2D v) {
    if (!std::isfinite(v.x1) || !std::isfinite(v.x2)) {
        throw EncodingError("non-finite feature vector");
    }
    const double n = v.norm();
    if (n == 0.0) {
        throw EncodingError("cannot encode a zero vector");
    }
    return {v.x1 / n, v.x2 / n};
}

double encoding_angle(FeatureVector2D v) {
    const auto a = encode_vector(v);
    return std::atan2(a.amp1, a.amp0);
}

RegisterLayout RegisterLayout::standard(int d, int n_points) {
    if (d < 0 || n_points < 1) {
        throw ValidationError("layout needs d >= 0 and at least one data position");
    }
    RegisterLayout layout;
    int next = 0;
    for (int i = 0; i < d; ++i) {
        layout.control.push_back(next++);
    }
    for (int i = 0; i < n_points; ++i) {
        layout.feature.push_back(next++);
    }
    for (int i = 0; i < n_points; ++i) {
        layout.label.push_back(next++);
    }
    layout.test = next++;
    layout.prediction = next;
    return layout;
}

void RegisterLayout::validate() const {
    if (feature.empty() || feature.size() != label.size()) {
        throw ValidationError("layout needs matching, non-empty feature and label ranges");
    }
    std::vector<int> all;
    all.insert(all.end(), control.begin(), control.end());
    all.insert(all.end(), feature.begin(), feature.end());
    all.insert(all.end(), label.begin(), label.end());
    all.push_back(test);
    all.push_back(prediction);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i] != static_cast<int>(i)) {
            throw ValidationError("layout index ranges overlap or leave gaps");
        }
    }
}

Circuit build_state_prep(const LabeledDataset &dataset, FeatureVector2D test, const RegisterLayout &layout) {
    layout.validate();
    if (dataset.size() != layout.feature.size()) {
        throw ValidationError("layout has " + std::to_string(layout.feature.size()) + " data positions but dataset has " +
                              std::to_string(dataset.size()) + " points");
    }
    Circuit circuit(layout.num_qubits());
    for (std::size_t p = 0; p < dataset.size(); ++p) {
        circuit.add(GateOp::rotation(layout.feature[p], encoding_angle(dataset[p].x)));
        if (dataset[p].label == 1) {
            circuit.add(GateOp::x(layout.label[p]));
        }
    }
    circuit.add(GateOp::rotation(layout.test, encoding_angle(test)));
    return circuit;
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string &field, std::size_t line) {
    double value = 0.0;
    const char *begin = field.data();
    const char *end = begin + field.size();
    if (!field.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError("cannot parse '" + field + "' as a real number", line);
    }
    return value;
}

}  // namespace

LabeledDataset read_dataset_csv(std::istream &in) {
    std::string raw;
    std::size_t line = 0;
    bool have_header = false;
    std::vector<LabeledPoint> points;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty()) {
            continue;
        }
        if (!have_header) {
            std::string header = text;
            if (header.rfind("\xEF\xBB\xBF", 0) == 0) {
                header.erase(0, 3);
            }
            if (header != "x1,x2,y") {
                throw ParseError("expected header 'x1,x2,y', got '" + header + "'", line);
            }
            have_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(text);
        std::string field;
        while (std::getline(row, field, ',')) {
            fields.push_back(trim(field));
        }
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line);
        }
        LabeledPoint p;
        p.x = {parse_real(fields[0], line), parse_real(fields[1], line)};
        if (fields[2] == "0") {
            p.label = 0;
        } else if (fields[2] == "1") {
            p.label = 1;
        } else {
            throw ParseError("label must be 0 or 1, got '" + fields[2] + "'", line);
        }
        try {
            encode_vector(p.x);
        } catch (const EncodingError &e) {
            throw ParseError(e.what(), line);
        }
        points.push_back(p);
    }
    if (!have_header) {
        throw ValidationError("dataset file is empty");
    }
    if (points.empty()) {
        throw ValidationError("dataset file has a header but no rows");
    }
    return LabeledDataset(std::move(points));
}

LabeledDataset load_dataset_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open dataset file " + path.string());
    }
    return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream &out, const LabeledDataset &dataset) {
    out << "x1,x2,y\n";
    char buf[64];
    for (const auto &p : dataset) {
        auto end = std::to_chars(buf, buf + sizeof(buf), p.x.x1).ptr;
        *end++ = ',';
        end = std::to_chars(end, buf + sizeof(buf), p.x.x2).ptr;
        out.write(buf, end - buf) << ',' << p.label << '\n';
    }
}

}  // namespace qens
