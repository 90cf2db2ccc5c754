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

#include "qens/bench.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "qens/errors.hpp"
#include "qens/seeding.hpp"

namespace qens::bench {

std::string format_real(double value) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc() ? std::string(buf, end) : std::to_string(value);
}

void GaussianSpec::validate() const {
    if (n_per_class < 1) {
        throw ValidationError("n_per_class must be >= 1");
    }
    if (!(sigma > 0.0)) {
        throw ValidationError("sigma must be > 0");
    }
}

LabeledDataset gen_gaussian_dataset(const GaussianSpec &spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.sigma);
    std::vector<LabeledPoint> points;
    points.reserve(2 * static_cast<std::size_t>(spec.n_per_class));
    for (int label = 0; label < 2; ++label) {
        const auto &mean = label == 0 ? spec.mean0 : spec.mean1;
        for (int i = 0; i < spec.n_per_class; ++i) {
            FeatureVector2D x;
            do {
                x.x1 = mean[0] + noise(rng);
                x.x2 = mean[1] + noise(rng);
            } while (x.norm() == 0.0);
            points.push_back({x, label});
        }
    }
    return LabeledDataset(std::move(points));
}

double accuracy(std::span<const int> decisions, std::span<const int> labels) {
    if (decisions.empty() || decisions.size() != labels.size()) {
        throw ValidationError("accuracy needs equal, non-empty decision and label lists");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        hits += decisions[i] == labels[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(decisions.size());
}

double brier(std::span<const double> probs, std::span<const int> labels) {
    if (probs.empty() || probs.size() != labels.size()) {
        throw ValidationError("brier needs equal, non-empty probability and label lists");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double e = probs[i] - labels[i];
        total += e * e;
    }
    return total / static_cast<double>(probs.size());
}

Quartiles quartiles(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("quartiles of an empty list");
    }
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    auto at = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

MeanStd mean_std(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("mean of an empty list");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() == 1) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : values) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::vector<std::size_t> select_training_points(std::size_t n_train, int b, std::uint64_t seed) {
    if (n_train == 0 || b < 1) {
        throw ValidationError("selection needs a non-empty training set and b >= 1");
    }
    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::size_t> picked(static_cast<std::size_t>(b));
    for (std::size_t i = 0; i < picked.size(); ++i) {
        picked[i] = order[i % n_train];
    }
    return picked;
}

PredictionResult predict_with_selection(const LabeledDataset &train, std::span<const std::size_t> selection,
                                        FeatureVector2D test, const BenchmarkOptions &options) {
    const auto b = selection.size();
    if (b == 1) {
        const auto &p = train[selection[0]];
        return classify_single(p.x, p.label, test, options.measurement);
    }
    const LabeledDataset chosen = train.subset(selection);
    EnsembleConfig config;
    config.d = std::countr_zero(b);
    config.measurement = options.measurement;
    const bool fits = full_circuit_qubits(config.d, static_cast<int>(b)) <= kMaxQubits;
    config.mode = options.mode == EnsembleMode::kFullCircuit && fits ? EnsembleMode::kFullCircuit
                                                                     : EnsembleMode::kTrajectories;
    return run_ensemble(chosen, test, config);
}

std::vector<TrialReport> run_benchmark(const GaussianSpec &spec, std::span<const int> b_values, int repetitions,
                                       double train_frac, const BenchmarkOptions &options) {
    spec.validate();
    if (b_values.empty()) {
        throw ValidationError("no ensemble sizes given");
    }
    for (int b : b_values) {
        if (b < 1 || !std::has_single_bit(static_cast<unsigned>(b)) || std::countr_zero(static_cast<unsigned>(b)) > kMaxTrajectoryBits) {
            throw ValidationError("ensemble size " + std::to_string(b) + " is not a power of two in [1, 2^" +
                                  std::to_string(kMaxTrajectoryBits) + "]");
        }
    }
    if (repetitions < 1) {
        throw ValidationError("repetitions must be >= 1");
    }
    if (!(train_frac > 0.0 && train_frac < 1.0)) {
        throw ValidationError("train_frac must be in (0, 1)");
    }

    std::vector<TrialReport> reports(b_values.size());
    for (std::size_t k = 0; k < b_values.size(); ++k) {
        reports[k].b = b_values[k];
        reports[k].sigma = spec.sigma;
        reports[k].repetitions = repetitions;
    }

    for (int rep = 0; rep < repetitions; ++rep) {
        const auto r = static_cast<std::uint64_t>(rep);
        GaussianSpec rep_spec = spec;
        rep_spec.seed = derive_seed(spec.seed, "data", {r});
        const LabeledDataset data = gen_gaussian_dataset(rep_spec);

        std::vector<std::size_t> order(data.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::mt19937_64 split_rng(derive_seed(spec.seed, "split", {r}));
        std::shuffle(order.begin(), order.end(), split_rng);
        const auto n_train = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(data.size())));
        if (n_train == 0 || n_train >= data.size()) {
            throw ValidationError("train_frac " + std::to_string(train_frac) + " leaves an empty train or test split");
        }
        const std::span<const std::size_t> all(order);
        const LabeledDataset train = data.subset(all.first(n_train));
        const LabeledDataset test = data.subset(all.subspan(n_train));

        std::vector<int> labels;
        for (const auto &p : test) {
            labels.push_back(p.label);
        }

        for (auto &report : reports) {
            std::vector<double> probs;
            std::vector<int> decisions;
            for (std::size_t t = 0; t < test.size(); ++t) {
                const auto selection = select_training_points(
                    train.size(), report.b,
                    derive_seed(spec.seed, "selection", {r, t, static_cast<std::uint64_t>(report.b)}));
                BenchmarkOptions point_options = options;
                if (const auto *shots = std::get_if<ShotMeasurement>(&options.measurement)) {
                    point_options.measurement =
                        ShotMeasurement{shots->shots, derive_seed(spec.seed, "shots", {r, t, static_cast<std::uint64_t>(report.b)})};
                }
                const auto result = predict_with_selection(train, selection, test[t].x, point_options);
                probs.push_back(result.prob_one);
                decisions.push_back(result.decision);
            }
            report.accuracies.push_back(accuracy(decisions, labels));
            report.briers.push_back(brier(probs, labels));
        }
    }

    for (auto &report : reports) {
        const auto acc = mean_std(report.accuracies);
        const auto bs = mean_std(report.briers);
        report.accuracy_mean = acc.mean;
        report.accuracy_std = acc.std;
        report.brier_mean = bs.mean;
        report.brier_std = bs.std;
    }
    return reports;
}

std::vector<TrialReport> run_overlap_sweep(const GaussianSpec &base, std::span<const double> sigmas,
                                           std::span<const int> b_values, int repetitions, double train_frac,
                                           const BenchmarkOptions &options) {
    if (sigmas.empty()) {
        throw ValidationError("no sigma values given");
    }
    for (std::size_t i = 1; i < sigmas.size(); ++i) {
        if (!(sigmas[i] > sigmas[i - 1])) {
            throw ValidationError("sigma values must be strictly increasing");
        }
    }
    std::vector<TrialReport> all;
    for (double sigma : sigmas) {
        GaussianSpec spec = base;
        spec.sigma = sigma;
        auto reports = run_benchmark(spec, b_values, repetitions, train_frac, options);
        all.insert(all.end(), reports.begin(), reports.end());
    }
    return all;
}

nlohmann::json to_json(const Quartiles &q) {
    return {{"min", q.min}, {"q1", q.q1}, {"median", q.median}, {"q3", q.q3}, {"max", q.max}};
}

nlohmann::json to_json(const TrialReport &report) {
    return {
        {"b", report.b},
        {"sigma", report.sigma},
        {"repetitions", report.repetitions},
        {"accuracy_mean", report.accuracy_mean},
        {"accuracy_std", report.accuracy_std},
        {"brier_mean", report.brier_mean},
        {"brier_std", report.brier_std},
        {"accuracy_quartiles", to_json(quartiles(report.accuracies))},
        {"brier_quartiles", to_json(quartiles(report.briers))},
        {"accuracies", report.accuracies},
        {"briers", report.briers},
    };
}

void write_reports_csv(std::ostream &out, std::span<const TrialReport> reports) {
    out << "b,sigma,rep,accuracy,brier\n";
    for (const auto &report : reports) {
        for (std::size_t rep = 0; rep < report.accuracies.size(); ++rep) {
            out << report.b << ',' << format_real(report.sigma) << ',' << rep << ','
                << format_real(report.accuracies[rep]) << ',' << format_real(report.briers[rep]) << '\n';
        }
    }
}

}  // namespace qens::bench
