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

#include "qens/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <nlohmann/json.hpp>
#include <random>
#include <stdexcept>
#include <type_traits>

#include "qens/bench.hpp"
#include "qens/classifier.hpp"
#include "qens/ensemble.hpp"
#include "qens/errors.hpp"
#include "qens/oracle.hpp"
#include "qens/seeding.hpp"

namespace qens::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct is_vector : std::false_type {};
template <class T>
struct is_vector<std::vector<T>> : std::true_type {};

/// Flags of one subcommand, each bound to a variable whose initial value is the default.
///
/// resolve() merges defaults, then the --config file, then explicitly given flags, and writes the
/// merged record back into the bound variables. The merged record is the RunConfig echoed in output.
class Params {
public:
    Params(CLI::App *app, std::string command) : app_(app), command_(std::move(command)) {
        app_->add_option("--config", config_path_, "JSON file with parameter values (flags take precedence)");
    }

    template <class T>
    CLI::Option *add(const std::string &key, T &var, const std::string &help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        CLI::Option *opt = app_->add_option(flag, var, help)->capture_default_str();
        if constexpr (is_vector<T>::value) {
            opt->delimiter(',');
        }
        entries_.push_back(Entry{
            key,
            opt,
            json(var),
            [&var] { return json(var); },
            [&var](const json &j) { var = j.get<T>(); },
        });
        return opt;
    }

    json resolve() {
        json merged = json::object();
        merged["command"] = command_;
        for (const auto &e : entries_) {
            merged[e.key] = e.initial;
        }
        if (!config_path_.empty()) {
            const json file = load_config();
            for (const auto &[key, value] : file.items()) {
                if (key == "command") {
                    if (value != command_) {
                        throw UsageError("config file is for command " + value.dump() + ", not '" + command_ + "'");
                    }
                    continue;
                }
                if (!merged.contains(key)) {
                    throw UsageError("unknown config key '" + key + "' for command '" + command_ + "'");
                }
                merged[key] = value;
            }
        }
        for (const auto &e : entries_) {
            if (e.option->count() > 0) {
                merged[e.key] = e.get();
            }
        }
        for (const auto &e : entries_) {
            try {
                e.set(merged.at(e.key));
            } catch (const json::exception &) {
                throw UsageError("invalid value " + merged.at(e.key).dump() + " for '" + e.key + "'");
            }
        }
        return merged;
    }

private:
    struct Entry {
        std::string key;
        CLI::Option *option;
        json initial;
        std::function<json()> get;
        std::function<void(const json &)> set;
    };

    json load_config() const {
        std::ifstream in(config_path_);
        if (!in) {
            throw UsageError("cannot open config file " + config_path_);
        }
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw UsageError("config file " + config_path_ + " is not a JSON object");
        }
        // An output document of an earlier run carries its config under "config".
        if (doc.contains("config") && doc["config"].is_object()) {
            return doc["config"];
        }
        return doc;
    }

    CLI::App *app_;
    std::string command_;
    std::string config_path_;
    std::vector<Entry> entries_;
};

struct OutputOptions {
    std::string format = "json";
    std::string out;

    void bind(Params &p) {
        p.add("format", format, "output format: json or csv");
        p.add("out", out, "output file (default: stdout)");
    }
};

void require_choice(const std::string &key, const std::string &value, std::initializer_list<const char *> choices) {
    for (const char *c : choices) {
        if (value == c) {
            return;
        }
    }
    throw UsageError("invalid value '" + value + "' for '" + key + "'");
}

FeatureVector2D require_point(const std::string &key, const std::vector<double> &v) {
    if (v.size() != 2) {
        throw UsageError("'" + key + "' needs exactly two comma-separated reals, e.g. 2,2");
    }
    return {v[0], v[1]};
}

Measurement measurement_for(int shots, std::uint64_t seed) {
    if (shots < 0) {
        throw UsageError("'shots' must be >= 0");
    }
    if (shots == 0) {
        return ExactMeasurement{};
    }
    return ShotMeasurement{shots, seed};
}

void emit(const OutputOptions &o, std::ostream &stdout_stream, const json &doc,
          const std::function<void(std::ostream &)> &csv_body) {
    require_choice("format", o.format, {"json", "csv"});
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) {
            throw Error("cannot open output file " + o.out);
        }
    }
    std::ostream &sink = o.out.empty() ? stdout_stream : file;
    if (o.format == "json") {
        sink << doc.dump(2) << '\n';
    } else {
        sink << "# config: " << doc.at("config").dump() << '\n';
        csv_body(sink);
    }
    if (!o.out.empty() && !file) {
        throw Error("failed writing output file " + o.out);
    }
}

json to_json(const FeatureVector2D &v) {
    return json::array({v.x1, v.x2});
}

// ---- classify

struct ClassifyCommand {
    std::vector<double> train;
    int label = 0;
    std::vector<double> test;
    int shots = 0;
    std::uint64_t seed = 0;
    OutputOptions output;

    void bind(Params &p) {
        p.add("train", train, "training vector x1,x2");
        p.add("label", label, "training label (0 or 1)");
        p.add("test", test, "test vector x1,x2");
        p.add("shots", shots, "measurement shots (0 = exact probability)");
        p.add("seed", seed, "shot sampling seed");
        output.bind(p);
    }

    void run(const json &config, std::ostream &out) const {
        const auto x = require_point("train", train);
        const auto t = require_point("test", test);
        if (label != 0 && label != 1) {
            throw UsageError("'label' must be 0 or 1");
        }
        const auto r = classify_single(x, label, t, measurement_for(shots, seed));
        const std::string mode = shots > 0 ? "shots" : "exact";
        const json doc = {{"config", config}, {"prob_one", r.prob_one}, {"decision", r.decision}, {"mode", mode}};
        emit(output, out, doc, [&](std::ostream &s) {
            s << "prob_one,decision,mode\n" << bench::format_real(r.prob_one) << ',' << r.decision << ',' << mode << '\n';
        });
    }
};

// ---- ensemble

EnsembleMode parse_mode(const std::string &mode) {
    require_choice("mode", mode, {"full", "traj"});
    return mode == "full" ? EnsembleMode::kFullCircuit : EnsembleMode::kTrajectories;
}

struct EnsembleCommand {
    std::string data;
    std::vector<double> test;
    int d = 1;
    std::string mode = "full";
    int shots = 0;
    std::uint64_t seed = 0;
    OutputOptions output;

    void bind(Params &p) {
        p.add("data", data, "training set CSV (header x1,x2,y)");
        p.add("test", test, "test vector x1,x2");
        p.add("d", d, "control qubits; ensemble size B = 2^d");
        p.add("mode", mode, "full (one statevector) or traj (per-trajectory)");
        p.add("shots", shots, "measurement shots (0 = exact probability)");
        p.add("seed", seed, "shot sampling seed");
        output.bind(p);
    }

    void run(const json &config, std::ostream &out) const {
        if (data.empty()) {
            throw UsageError("'data' is required");
        }
        const auto t = require_point("test", test);
        EnsembleConfig cfg;
        cfg.d = d;
        cfg.mode = parse_mode(mode);
        cfg.measurement = measurement_for(shots, seed);
        const auto dataset = load_dataset_csv(data);
        const auto r = run_ensemble(dataset, t, cfg);
        const std::uint64_t b = std::uint64_t{1} << d;
        json doc = {{"config", config}, {"prob_one", r.prob_one}, {"decision", r.decision}, {"b", b}};
        if (r.per_trajectory) {
            doc["per_trajectory"] = *r.per_trajectory;
        }
        emit(output, out, doc, [&](std::ostream &s) {
            s << "b,prob_one,decision\n" << b << ',' << bench::format_real(r.prob_one) << ',' << r.decision << '\n';
            if (r.per_trajectory) {
                s << "trajectory,prob_one\n";
                for (std::size_t i = 0; i < r.per_trajectory->size(); ++i) {
                    s << i << ',' << bench::format_real((*r.per_trajectory)[i]) << '\n';
                }
            }
        });
    }
};

// ---- toy

LabeledDataset toy_set() {
    return LabeledDataset(std::vector<LabeledPoint>{{{1, 3}, 0}, {{-2, 2}, 1}, {{3, 0}, 0}, {{3, 1}, 1}});
}

struct ToyRow {
    std::vector<double> per_classifier;
    double average = 0.0;
    double qensemble = 0.0;
};

struct ToyCommand {
    std::string data;
    std::vector<double> test{2.0, 2.0};
    int random_datasets = 0;
    int shots = 0;
    std::uint64_t seed = 0;
    OutputOptions output;

    void bind(Params &p) {
        p.add("data", data, "training set CSV with 2^d points (default: the 4-point toy set)");
        p.add("test", test, "test vector x1,x2");
        p.add("random_datasets", random_datasets, "additional seeded random 4-point datasets");
        p.add("shots", shots, "measurement shots (0 = exact probability)");
        p.add("seed", seed, "seed for random datasets and shot sampling");
        output.bind(p);
    }

    ToyRow compare(const LabeledDataset &dataset, FeatureVector2D t, std::uint64_t k) const {
        const auto n = dataset.size();
        if (!std::has_single_bit(n) || n < 2) {
            throw ValidationError("toy dataset needs a power-of-two number of points >= 2, got " + std::to_string(n));
        }
        ToyRow row;
        for (std::size_t i = 0; i < n; ++i) {
            const auto m = measurement_for(shots, derive_seed(seed, "classifier", {k, i}));
            row.per_classifier.push_back(classify_single(dataset[i].x, dataset[i].label, t, m).prob_one);
        }
        row.average = pairwise_mean(row.per_classifier);
        EnsembleConfig cfg;
        cfg.d = std::countr_zero(n);
        cfg.mode = EnsembleMode::kFullCircuit;
        cfg.measurement = measurement_for(shots, derive_seed(seed, "qensemble", {k}));
        row.qensemble = run_ensemble(dataset, t, cfg).prob_one;
        return row;
    }

    static json row_json(const ToyRow &row) {
        return {{"per_classifier", row.per_classifier},
                {"average", row.average},
                {"qensemble", row.qensemble},
                {"abs_diff", std::abs(row.average - row.qensemble)}};
    }

    void run(const json &config, std::ostream &out) const {
        if (random_datasets < 0) {
            throw UsageError("'random_datasets' must be >= 0");
        }
        const auto t = require_point("test", test);
        const auto base = data.empty() ? toy_set() : load_dataset_csv(data);
        const auto base_row = compare(base, t, 0);

        std::vector<std::pair<LabeledDataset, FeatureVector2D>> randoms;
        std::vector<ToyRow> random_rows;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const auto draw = [&](std::mt19937_64 &rng) {
            FeatureVector2D v;
            do {
                v = {u(rng), u(rng)};
            } while (v.norm() < 1e-6);
            return v;
        };
        for (int k = 0; k < random_datasets; ++k) {
            std::mt19937_64 rng(derive_seed(seed, "toy", {static_cast<std::uint64_t>(k)}));
            std::vector<LabeledPoint> pts;
            for (int i = 0; i < 4; ++i) {
                const auto x = draw(rng);
                pts.push_back({x, static_cast<int>(rng() & 1)});
            }
            const auto rt = draw(rng);
            randoms.emplace_back(LabeledDataset(pts), rt);
            random_rows.push_back(compare(randoms.back().first, rt, static_cast<std::uint64_t>(k) + 1));
        }

        json doc = {{"config", config}, {"dataset", row_json(base_row)}, {"random_datasets", json::array()}};
        for (std::size_t k = 0; k < random_rows.size(); ++k) {
            json row = row_json(random_rows[k]);
            json points = json::array();
            for (const auto &p : randoms[k].first) {
                points.push_back({{"x", to_json(p.x)}, {"label", p.label}});
            }
            row["points"] = points;
            row["test"] = to_json(randoms[k].second);
            doc["random_datasets"].push_back(row);
        }
        emit(output, out, doc, [&](std::ostream &s) {
            s << "dataset,classifier,prob_one\n";
            const auto write = [&](const std::string &name, const ToyRow &row) {
                for (std::size_t i = 0; i < row.per_classifier.size(); ++i) {
                    s << name << ',' << i << ',' << bench::format_real(row.per_classifier[i]) << '\n';
                }
                s << name << ",average," << bench::format_real(row.average) << '\n';
                s << name << ",qensemble," << bench::format_real(row.qensemble) << '\n';
            };
            write("base", base_row);
            for (std::size_t k = 0; k < random_rows.size(); ++k) {
                write("random" + std::to_string(k), random_rows[k]);
            }
        });
    }
};

// ---- theory

struct TheoryCommand {
    std::vector<double> e_model{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> rho{0.0, 0.25, 0.5, 0.75, 1.0};
    int d_max = 10;
    OutputOptions output{"csv", ""};

    void bind(Params &p) {
        p.add("e_model", e_model, "single-model expected errors");
        p.add("rho", rho, "average error correlations in [0, 1]");
        p.add("d_max", d_max, "largest d; rows for B = 2^0 .. 2^d_max");
        output.bind(p);
    }

    void run(const json &config, std::ostream &out) const {
        if (e_model.empty() || rho.empty()) {
            throw UsageError("'e_model' and 'rho' need at least one value");
        }
        if (d_max < 0 || d_max > 62) {
            throw UsageError("'d_max' must be in [0, 62]");
        }
        json rows = json::array();
        std::ostringstream csv;
        csv << "e_model,rho,d,b,ensemble_error\n";
        for (double e : e_model) {
            for (double r : rho) {
                for (int d = 0; d <= d_max; ++d) {
                    const std::uint64_t b = std::uint64_t{1} << d;
                    const double err = oracle::ensemble_error({e, r, b});
                    rows.push_back({{"e_model", e}, {"rho", r}, {"d", d}, {"b", b}, {"ensemble_error", err}});
                    csv << bench::format_real(e) << ',' << bench::format_real(r) << ',' << d << ',' << b << ','
                        << bench::format_real(err) << '\n';
                }
            }
        }
        emit(output, out, {{"config", config}, {"rows", rows}}, [&](std::ostream &s) { s << csv.str(); });
    }
};

// ---- benchmark / sweep

struct GaussianOptions {
    int n_per_class = 100;
    std::vector<double> mean0{1.0, 0.3};
    std::vector<double> mean1{0.3, 1.0};
    std::uint64_t seed = 0;
    int reps = 10;
    std::vector<int> b_values{1, 2, 4, 8, 16};
    double train_frac = 0.9;
    std::string mode = "traj";
    int shots = 0;

    void bind(Params &p) {
        p.add("n_per_class", n_per_class, "points drawn per class");
        p.add("mean0", mean0, "class-0 mean x1,x2");
        p.add("mean1", mean1, "class-1 mean x1,x2");
        p.add("seed", seed, "master seed");
        p.add("reps", reps, "repetitions (fresh dataset and split each)");
        p.add("b_values", b_values, "ensemble sizes (powers of two)");
        p.add("train_frac", train_frac, "training fraction of the dataset");
        p.add("mode", mode, "full or traj");
        p.add("shots", shots, "measurement shots (0 = exact probability)");
    }

    bench::GaussianSpec spec(double sigma) const {
        bench::GaussianSpec s;
        s.n_per_class = n_per_class;
        const auto m0 = require_point("mean0", mean0);
        const auto m1 = require_point("mean1", mean1);
        s.mean0 = {m0.x1, m0.x2};
        s.mean1 = {m1.x1, m1.x2};
        s.sigma = sigma;
        s.seed = seed;
        return s;
    }

    bench::BenchmarkOptions options() const {
        bench::BenchmarkOptions o;
        o.mode = parse_mode(mode);
        o.measurement = measurement_for(shots, seed);
        return o;
    }
};

void emit_reports(const OutputOptions &output, std::ostream &out, const json &config,
                  const std::vector<bench::TrialReport> &reports) {
    json list = json::array();
    for (const auto &r : reports) {
        list.push_back(bench::to_json(r));
    }
    emit(output, out, {{"config", config}, {"reports", list}},
         [&](std::ostream &s) { bench::write_reports_csv(s, reports); });
}

struct BenchmarkCommand {
    GaussianOptions gaussian;
    double sigma = 0.3;
    OutputOptions output;

    void bind(Params &p) {
        gaussian.bind(p);
        p.add("sigma", sigma, "per-coordinate standard deviation");
        output.bind(p);
    }

    void run(const json &config, std::ostream &out) const {
        const auto reports = bench::run_benchmark(gaussian.spec(sigma), gaussian.b_values, gaussian.reps,
                                                  gaussian.train_frac, gaussian.options());
        emit_reports(output, out, config, reports);
    }
};

struct SweepCommand {
    GaussianOptions gaussian;
    std::vector<double> sigmas{0.3, 0.5, 0.7, 0.9};
    OutputOptions output;

    void bind(Params &p) {
        gaussian.bind(p);
        p.add("sigmas", sigmas, "increasing standard deviations");
        output.bind(p);
    }

    void run(const json &config, std::ostream &out) const {
        const auto reports = bench::run_overlap_sweep(gaussian.spec(sigmas.empty() ? 0.0 : sigmas.front()), sigmas,
                                                      gaussian.b_values, gaussian.reps, gaussian.train_frac,
                                                      gaussian.options());
        emit_reports(output, out, config, reports);
    }
};

struct Subcommand {
    CLI::App *app;
    std::unique_ptr<Params> params;
    std::function<void(const json &, std::ostream &)> run;
};

template <class Command>
Subcommand make_subcommand(CLI::App &root, const std::string &name, const std::string &help, Command &cmd) {
    CLI::App *app = root.add_subcommand(name, help);
    auto params = std::make_unique<Params>(app, name);
    cmd.bind(*params);
    return {app, std::move(params), [&cmd](const json &config, std::ostream &out) { cmd.run(config, out); }};
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum bagging ensemble simulator", "qens"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qens 0.1.0");

    ClassifyCommand classify;
    EnsembleCommand ensemble;
    ToyCommand toy;
    TheoryCommand theory;
    BenchmarkCommand benchmark;
    SweepCommand sweep;
    std::vector<Subcommand> subs;
    subs.push_back(make_subcommand(app, "classify", "single cosine classifier on one training point", classify));
    subs.push_back(make_subcommand(app, "ensemble", "quantum ensemble prediction for one test point", ensemble));
    subs.push_back(make_subcommand(app, "toy", "per-classifier, average and ensemble probabilities", toy));
    subs.push_back(make_subcommand(app, "theory", "ensemble error over correlation and ensemble size", theory));
    subs.push_back(make_subcommand(app, "benchmark", "repeated Gaussian benchmark per ensemble size", benchmark));
    subs.push_back(make_subcommand(app, "sweep", "Gaussian benchmark over increasing class overlap", sweep));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    for (auto &sub : subs) {
        if (!sub.app->parsed()) {
            continue;
        }
        try {
            const json config = sub.params->resolve();
            sub.run(config, out);
            return kExitOk;
        } catch (const UsageError &e) {
            err << "error: " << e.what() << "\nRun with --help for more information.\n";
            return kExitUsage;
        } catch (const std::exception &e) {
            err << "error: " << e.what() << '\n';
            return kExitRuntime;
        }
    }
    return kExitUsage;
}

}  // namespace qens::cli
