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

#include "qens/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "qens/errors.hpp"
#include "qens/oracle.hpp"
#include "test_util.hpp"

using namespace qens;
using qens::testutil::max_amplitude_diff;

namespace {

// Data-register state for N positions with only feature qubit `marker` set.
StateVector marker_state(int n_points, int marker) {
    std::vector<Complex> amps(std::size_t{1} << (2 * n_points));
    amps[std::size_t{1} << marker] = 1.0;
    return StateVector::from_amplitudes(std::move(amps));
}

// For every trajectory b, the original position now at data position 0, read off the dense-matrix
// oracle state by tracking a marker qubit through each branch.
std::vector<int> active_points_via_oracle(const SwapPlan &plan) {
    const int d = plan.d();
    std::vector<int> active(plan.trajectories(), -1);
    for (int marker = 0; marker < plan.n_points; ++marker) {
        const auto state = oracle::brute_force_state(plan, marker_state(plan.n_points, marker));
        for (std::uint64_t i = 0; i < state.size(); ++i) {
            if (std::abs(state[i]) < 1e-9) {
                continue;
            }
            const std::uint64_t b = i & ((std::uint64_t{1} << d) - 1);
            const std::uint64_t data = i >> d;
            if (data == 1) {  // marker sits at position 0
                active[b] = marker;
            }
        }
    }
    return active;
}

StateVector data_state_for(const LabeledDataset &data) {
    const int n = static_cast<int>(data.size());
    const auto layout = RegisterLayout::standard(0, n);
    auto s = StateVector::zero(layout.num_qubits());
    run_circuit(s, build_state_prep(data, {1, 0}, layout));
    // Drop the test and prediction qubits, which are |0>.
    std::vector<Complex> amps(std::size_t{1} << (2 * n));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = s[i];
    }
    return StateVector::from_amplitudes(std::move(amps));
}

LabeledDataset random_dataset(int n, std::mt19937_64 &rng) {
    std::vector<LabeledPoint> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back({testutil::random_vector(rng), static_cast<int>(rng() & 1)});
    }
    return LabeledDataset(pts);
}

// Amplitudes of the sampling-stage output restricted to the control and data qubits.
std::vector<Complex> sampling_output(const SwapPlan &plan, const LabeledDataset &data) {
    const auto layout = RegisterLayout::standard(plan.d(), plan.n_points);
    auto s = StateVector::zero(layout.num_qubits());
    run_circuit(s, build_state_prep(data, {1, 0}, layout));
    run_circuit(s, build_sampling_stage(plan, layout));
    std::vector<Complex> amps(std::size_t{1} << (plan.d() + 2 * plan.n_points));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = s[i];
    }
    return amps;
}

}  // namespace

TEST(Permutation, from_sources_reproduces_mapping) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        std::vector<int> src(n);
        std::iota(src.begin(), src.end(), 0);
        std::shuffle(src.begin(), src.end(), rng);
        const auto perm = Permutation::from_sources(src);
        std::vector<int> arr(n);
        std::iota(arr.begin(), arr.end(), 0);
        perm.apply(arr);
        ASSERT_EQ(arr, src);
        ASSERT_LT(static_cast<int>(perm.swaps().size()), std::max(n, 1));
    }
    EXPECT_THROW(Permutation::from_sources(std::vector<int>{0, 0}), ValidationError);
    EXPECT_THROW(Permutation({{1, 1}}), ValidationError);
}

TEST(default_swap_plan, small_cases) {
    const auto p1 = default_swap_plan(1, 2);
    EXPECT_EQ(p1.active_point(0), 0);
    EXPECT_EQ(p1.active_point(1), 1);

    const auto p2 = default_swap_plan(2, 4);
    std::vector<int> seen;
    for (std::uint64_t b = 0; b < 4; ++b) {
        seen.push_back(p2.active_point(b));
    }
    EXPECT_EQ(seen, (std::vector<int>{0, 1, 2, 3}));
}

TEST(default_swap_plan, cycles_when_ensemble_exceeds_data) {
    const auto plan = default_swap_plan(3, 4);
    // Frozen from the dense-matrix oracle (active_points_via_oracle).
    const std::vector<int> expected{0, 1, 2, 3, 0, 1, 2, 3};
    EXPECT_EQ(active_points_via_oracle(plan), expected);
    for (std::uint64_t b = 0; b < 8; ++b) {
        EXPECT_EQ(plan.active_point(b), expected[b]);
    }
}

TEST(default_swap_plan, reads_b_mod_n_for_many_shapes) {
    for (int d = 1; d <= 6; ++d) {
        for (int n = 1; n <= 11; ++n) {
            const auto plan = default_swap_plan(d, n);
            for (std::uint64_t b = 0; b < plan.trajectories(); ++b) {
                ASSERT_EQ(plan.active_point(b), static_cast<int>(b % n)) << "d=" << d << " n=" << n;
            }
        }
    }
}

TEST(SwapPlan, arrangement_agrees_with_oracle_on_random_plans) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto plan = random_swap_plan(2, 4, seed);
        const auto via_oracle = active_points_via_oracle(plan);
        for (std::uint64_t b = 0; b < plan.trajectories(); ++b) {
            ASSERT_EQ(plan.active_point(b), via_oracle[b]);
        }
    }
}

TEST(random_swap_plan, deterministic_per_seed) {
    const auto a = random_swap_plan(3, 5, 99);
    const auto b = random_swap_plan(3, 5, 99);
    for (std::uint64_t t = 0; t < 8; ++t) {
        EXPECT_EQ(a.arrangement(t), b.arrangement(t));
    }
}

TEST(build_sampling_stage, identity_plan_gives_uniform_control) {
    const LabeledDataset data(std::vector<LabeledPoint>{{{1, 2}, 1}});
    const auto plan = identity_swap_plan(1, 1);
    const auto out = sampling_output(plan, data);
    const auto a = encode_vector({1, 2});
    // Basis index: control bit 0, feature bit 1, label bit 2 (label = 1).
    const double s = 1 / std::sqrt(2.0);
    std::vector<Complex> expected(8);
    expected[0b100] = s * a.amp0;
    expected[0b101] = s * a.amp0;
    expected[0b110] = s * a.amp1;
    expected[0b111] = s * a.amp1;
    EXPECT_LT(max_amplitude_diff(out, expected), 1e-12);
}

TEST(build_sampling_stage, gate_order_per_step) {
    const auto plan = default_swap_plan(2, 4);
    const auto layout = RegisterLayout::standard(2, 4);
    const auto c = build_sampling_stage(plan, layout);
    ASSERT_GE(c.ops().size(), 4u);
    EXPECT_EQ(c.ops()[0].name, "H");
    EXPECT_EQ(c.ops()[1].name, "H");
    // Step 0: identity first transformation, then X on control 0, then the controlled shift.
    EXPECT_EQ(c.ops()[2].name, "X");
    EXPECT_EQ(c.ops()[2].targets, std::vector<int>{0});
    EXPECT_EQ(c.ops()[3].kind, GateKind::kControlledSwap);
    EXPECT_EQ(c.ops()[3].controls, (std::vector<Control>{{0, 1}}));
}

TEST(build_sampling_stage, rejects_mismatches) {
    const auto plan = default_swap_plan(2, 4);
    EXPECT_THROW(build_sampling_stage(plan, RegisterLayout::standard(1, 4)), ValidationError);
    EXPECT_THROW(build_sampling_stage(plan, RegisterLayout::standard(2, 3)), ValidationError);
    SwapPlan bad = identity_swap_plan(1, 2);
    bad.steps[0].second = Permutation({{0, 5}});
    EXPECT_THROW(build_sampling_stage(bad, RegisterLayout::standard(1, 2)), ValidationError);
}

TEST(build_sampling_stage, first_controlled_step_matches_dense_product) {
    // (H (x) H (x) S)|0>, then CU_(1,1) on control qubit 0.
    const auto data = testutil::toy_dataset();
    const auto plan = random_swap_plan(2, 4, 17);
    const auto layout = RegisterLayout::standard(2, 4);
    const int n = 10;  // control + data qubits; test/prediction stay |0>
    const auto prep = build_state_prep(data, {1, 0}, layout);

    Circuit step(layout.num_qubits());
    step.add(GateOp::h(0)).add(GateOp::h(1));
    for (const auto &[p, q] : plan.steps[0].first.swaps()) {
        step.add(GateOp::cswap(0, layout.feature[p], layout.feature[q]));
        step.add(GateOp::cswap(0, layout.label[p], layout.label[q]));
    }
    auto s = StateVector::zero(layout.num_qubits());
    run_circuit(s, prep);
    std::vector<Complex> dense_state(s.amplitudes().begin(), s.amplitudes().begin() + (1 << n));
    run_circuit(s, step);
    for (const auto &op : step.ops()) {
        dense_state = oracle::dense_operator(op, n) * std::span<const Complex>(dense_state);
    }
    EXPECT_LT(max_amplitude_diff(std::span<const Complex>(s.amplitudes()).first(1 << n), dense_state), 1e-12);

    // Closed form: qubit 1 in |+>, qubit 0 entangled as (|0>|xy> + |1> U_(1,1)|xy>) / sqrt(2).
    const auto xy = data_state_for(data);
    std::vector<int> src(4);
    std::iota(src.begin(), src.end(), 0);
    plan.steps[0].first.apply(src);
    for (std::uint64_t i = 0; i < (1u << n); ++i) {
        const std::uint64_t c0 = i & 1;
        const std::uint64_t x = i >> 2;
        Complex want;
        if (c0 == 0) {
            want = 0.5 * xy[x];
        } else {
            // U moves content of src[p] to p, so amplitude at permuted index x is that of its preimage.
            std::uint64_t pre = 0;
            for (int p = 0; p < 4; ++p) {
                pre |= ((x >> p) & 1) << src[p];
                pre |= ((x >> (4 + p)) & 1) << (4 + src[p]);
            }
            want = 0.5 * xy[pre];
        }
        ASSERT_NEAR(std::abs(dense_state[i] - want), 0.0, 1e-12) << i;
    }
}

TEST(build_sampling_stage, matches_brute_force_for_d_1_2_3) {
    std::mt19937_64 rng(31);
    for (int d = 1; d <= 3; ++d) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto data = random_dataset(4, rng);
            const auto plan = random_swap_plan(d, 4, seed * 7 + d);
            const auto circuit_state = sampling_output(plan, data);
            const auto dense = oracle::brute_force_state(plan, data_state_for(data));
            ASSERT_LT(max_amplitude_diff(circuit_state, dense.amplitudes()), 1e-10) << "d=" << d;
            const auto closed = oracle::trajectory_expansion(plan, data_state_for(data));
            ASSERT_LT(max_amplitude_diff(circuit_state, closed.amplitudes()), 1e-10) << "d=" << d;
        }
    }
}

TEST(build_sampling_stage, toy_plan_matches_brute_force) {
    const auto data = testutil::toy_dataset();
    const auto plan = default_swap_plan(2, 4);
    const auto dense = oracle::brute_force_state(plan, data_state_for(data));
    EXPECT_LT(max_amplitude_diff(sampling_output(plan, data), dense.amplitudes()), 1e-10);
}

TEST(build_sampling_stage, control_branches_hold_transformed_data) {
    const auto data = testutil::toy_dataset();
    const auto plan = random_swap_plan(3, 4, 1234);
    const auto out = sampling_output(plan, data);
    const auto xy = data_state_for(data);
    const double scale = 1 / std::sqrt(8.0);
    for (std::uint64_t b = 0; b < 8; ++b) {
        const auto src = plan.arrangement(b);
        for (std::uint64_t x = 0; x < xy.size(); ++x) {
            std::uint64_t pre = 0;
            for (int p = 0; p < 4; ++p) {
                pre |= ((x >> p) & 1) << src[p];
                pre |= ((x >> (4 + p)) & 1) << (4 + src[p]);
            }
            ASSERT_NEAR(std::abs(out[(x << 3) | b] - scale * xy[pre]), 0.0, 1e-12);
        }
    }
}

TEST(run_ensemble_full, toy_average) {
    const auto data = testutil::toy_dataset();
    EnsembleConfig cfg;
    cfg.d = 2;
    const auto r = run_ensemble_full(data, testutil::kToyTest, cfg);
    EXPECT_NEAR(r.prob_one, 0.4375, 1e-9);
    EXPECT_EQ(r.decision, 0);
    EXPECT_FALSE(r.per_trajectory.has_value());
    const auto circuit = build_ensemble_circuit(data, testutil::kToyTest, default_swap_plan(2, 4));
    EXPECT_EQ(circuit.num_qubits(), 12);
}

TEST(run_ensemble_full, repeated_point_equals_single_classifier) {
    const LabeledPoint p{{1, 3}, 0};
    const LabeledDataset data(std::vector<LabeledPoint>(4, p));
    EnsembleConfig cfg;
    cfg.d = 2;
    EXPECT_NEAR(run_ensemble_full(data, {2, 2}, cfg).prob_one,
                classify_single(p.x, p.label, {2, 2}, ExactMeasurement{}).prob_one, 1e-9);
}

TEST(run_ensemble_full, d1_over_two_points) {
    const auto all = testutil::toy_dataset();
    const std::vector<std::size_t> first_two{0, 1};
    EnsembleConfig cfg;
    cfg.d = 1;
    EXPECT_NEAR(run_ensemble_full(all.subset(first_two), {2, 2}, cfg).prob_one, 0.30, 1e-9);
}

TEST(run_ensemble_full, capacity_error_names_qubits) {
    std::mt19937_64 rng(1);
    const auto data = random_dataset(8, rng);
    EnsembleConfig cfg;
    cfg.d = 10;
    try {
        run_ensemble_full(data, {1, 1}, cfg);
        FAIL() << "expected CapacityError";
    } catch (const CapacityError &e) {
        EXPECT_NE(std::string(e.what()).find("28 qubits"), std::string::npos) << e.what();
    }
}

TEST(run_ensemble_full, plan_mismatch) {
    const auto data = testutil::toy_dataset();
    EnsembleConfig cfg;
    cfg.d = 2;
    cfg.swap_plan = default_swap_plan(1, 4);
    EXPECT_THROW(run_ensemble_full(data, {2, 2}, cfg), ValidationError);
    cfg.swap_plan = default_swap_plan(2, 3);
    EXPECT_THROW(run_ensemble_full(data, {2, 2}, cfg), ValidationError);
}

TEST(run_ensemble_trajectories, toy_per_trajectory) {
    EnsembleConfig cfg;
    cfg.d = 2;
    cfg.mode = EnsembleMode::kTrajectories;
    const auto r = run_ensemble_trajectories(testutil::toy_dataset(), testutil::kToyTest, cfg);
    ASSERT_TRUE(r.per_trajectory.has_value());
    const std::vector<double> expected{0.10, 0.50, 0.25, 0.90};
    ASSERT_EQ(r.per_trajectory->size(), 4u);
    for (std::size_t b = 0; b < 4; ++b) {
        EXPECT_NEAR((*r.per_trajectory)[b], expected[b], 1e-9);
    }
    EXPECT_NEAR(r.prob_one, 0.4375, 1e-9);
}

TEST(run_ensemble_trajectories, sixteen_points_d4) {
    std::mt19937_64 rng(77);
    const auto data = random_dataset(16, rng);
    const FeatureVector2D test{0.3, -1.2};
    EnsembleConfig cfg;
    cfg.d = 4;
    cfg.mode = EnsembleMode::kTrajectories;
    const auto r = run_ensemble(data, test, cfg);
    double mean = 0.0;
    for (const auto &p : data) {
        mean += classify_single(p.x, p.label, test, ExactMeasurement{}).prob_one / 16.0;
    }
    EXPECT_NEAR(r.prob_one, mean, 1e-12);
}

TEST(run_ensemble_trajectories, large_b_and_limit) {
    std::mt19937_64 rng(78);
    const auto data = random_dataset(5, rng);
    EnsembleConfig cfg;
    cfg.mode = EnsembleMode::kTrajectories;
    cfg.d = kMaxTrajectoryBits;
    const auto r = run_ensemble(data, {1, 1}, cfg);
    EXPECT_EQ(r.per_trajectory->size(), std::size_t{1} << kMaxTrajectoryBits);
    cfg.d = kMaxTrajectoryBits + 1;
    EXPECT_THROW(run_ensemble(data, {1, 1}, cfg), CapacityError);
}

TEST(run_ensemble, modes_agree_and_stay_within_bounds) {
    std::mt19937_64 rng(404);
    for (int d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto data = random_dataset(4, rng);
            const auto test = testutil::random_vector(rng);
            EnsembleConfig cfg;
            cfg.d = d;
            if (trial % 2) {
                cfg.swap_plan = random_swap_plan(d, 4, rng());
            }
            cfg.mode = EnsembleMode::kFullCircuit;
            const auto full = run_ensemble(data, test, cfg);
            cfg.mode = EnsembleMode::kTrajectories;
            const auto traj = run_ensemble(data, test, cfg);
            ASSERT_NEAR(full.prob_one, traj.prob_one, 1e-9);
            const auto [lo, hi] = std::minmax_element(traj.per_trajectory->begin(), traj.per_trajectory->end());
            ASSERT_GE(full.prob_one, *lo - 1e-12);
            ASSERT_LE(full.prob_one, *hi + 1e-12);
        }
    }
}

TEST(run_ensemble, shots_mode_is_seeded) {
    const auto data = testutil::toy_dataset();
    EnsembleConfig cfg;
    cfg.d = 2;
    cfg.measurement = ShotMeasurement{8192, 5};
    const auto a = run_ensemble_full(data, testutil::kToyTest, cfg);
    const auto b = run_ensemble_full(data, testutil::kToyTest, cfg);
    EXPECT_EQ(a.prob_one, b.prob_one);
    EXPECT_NEAR(a.prob_one, 0.4375, 0.02);
    cfg.mode = EnsembleMode::kTrajectories;
    const auto t = run_ensemble(data, testutil::kToyTest, cfg);
    EXPECT_NEAR(t.prob_one, 0.4375, 0.02);
}

TEST(build_ensemble_circuit, single_classifier_instance) {
    for (int d = 1; d <= 3; ++d) {
        const auto data = testutil::toy_dataset();
        const auto c = build_ensemble_circuit(data, {2, 2}, default_swap_plan(d, 4));
        EXPECT_EQ(c.count_segments(kClassifierSegment), 1u);
        const int prediction = full_circuit_qubits(d, 4) - 1;
        const auto swap_tests = std::count_if(c.ops().begin(), c.ops().end(), [&](const GateOp &op) {
            return op.kind == GateKind::kControlledSwap && op.controls.front().qubit == prediction;
        });
        EXPECT_EQ(swap_tests, 1);
    }
}

TEST(pairwise_mean, order_independent) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> v(1000);
    for (auto &x : v) {
        x = u(rng);
    }
    const double expected = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    EXPECT_NEAR(pairwise_mean(v), expected, 1e-14);
    EXPECT_THROW(pairwise_mean(std::vector<double>{}), ValidationError);
}
