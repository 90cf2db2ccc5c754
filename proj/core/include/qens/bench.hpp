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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qens/classifier.hpp"
#include "qens/encoding.hpp"
#include "qens/ensemble.hpp"

namespace qens::bench {

/// Two bivariate Gaussian classes sharing a diagonal covariance sigma^2 I.
struct GaussianSpec {
    int n_per_class = 100;
    std::array<double, 2> mean0{1.0, 0.3};
    std::array<double, 2> mean1{0.3, 1.0};
    double sigma = 0.3;
    std::uint64_t seed = 0;

    void validate() const;
};

/// n_per_class class-0 points followed by n_per_class class-1 points. Deterministic per seed.
LabeledDataset gen_gaussian_dataset(const GaussianSpec &spec);

/// Fraction of positions where decisions[i] == labels[i].
double accuracy(std::span<const int> decisions, std::span<const int> labels);
/// Mean of (prob_one - label)^2.
double brier(std::span<const double> probs, std::span<const int> labels);

/// Five-number summary (linear interpolation between order statistics).
struct Quartiles {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};
Quartiles quartiles(std::span<const double> values);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};
/// Mean and sample standard deviation (n - 1 denominator; 0 for a single value).
MeanStd mean_std(std::span<const double> values);

struct TrialReport {
    int b = 1;
    double sigma = 0.0;
    int repetitions = 0;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
    double brier_mean = 0.0;
    double brier_std = 0.0;
    std::vector<double> accuracies;  // one per repetition
    std::vector<double> briers;
};

struct BenchmarkOptions {
    /// Trajectory mode by default; full-circuit mode is used only where the circuit fits.
    EnsembleMode mode = EnsembleMode::kTrajectories;
    Measurement measurement = ExactMeasurement{};
};

/// Repeated train/test evaluation of the ensemble for each B in `b_values`.
///
/// Each repetition draws a fresh dataset and split from `spec.seed`. Every test point gets its own
/// B training points, drawn without replacement (cyclically reused once B exceeds the training set).
std::vector<TrialReport> run_benchmark(const GaussianSpec &spec, std::span<const int> b_values, int repetitions,
                                       double train_frac, const BenchmarkOptions &options = {});

/// run_benchmark for every sigma in increasing order, other GaussianSpec fields fixed.
std::vector<TrialReport> run_overlap_sweep(const GaussianSpec &base, std::span<const double> sigmas,
                                           std::span<const int> b_values, int repetitions, double train_frac = 0.9,
                                           const BenchmarkOptions &options = {});

/// Ensemble prediction for one test point from the `b` training points at `selection`.
PredictionResult predict_with_selection(const LabeledDataset &train, std::span<const std::size_t> selection,
                                        FeatureVector2D test, const BenchmarkOptions &options);

/// Indices of `b` training points for one test point: a seeded shuffle of [0, n_train), reused cyclically.
std::vector<std::size_t> select_training_points(std::size_t n_train, int b, std::uint64_t seed);

nlohmann::json to_json(const TrialReport &report);
nlohmann::json to_json(const Quartiles &q);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double value);

/// Flat `b,sigma,rep,accuracy,brier` rows.
void write_reports_csv(std::ostream &out, std::span<const TrialReport> reports);

}  // namespace qens::bench
