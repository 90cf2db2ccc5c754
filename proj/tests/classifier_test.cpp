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

#include "qens/classifier.hpp"

#include <random>

#include "gtest/gtest.h"
#include "qens/errors.hpp"
#include "qens/oracle.hpp"
#include "test_util.hpp"

using namespace qens;

namespace {

double exact(FeatureVector2D train, int label, FeatureVector2D test) {
    return classify_single(train, label, test, ExactMeasurement{}).prob_one;
}

}  // namespace

TEST(build_cosine_classifier, gate_sequence) {
    const auto c = build_cosine_classifier({0, 1, 2, 3}, 4);
    ASSERT_EQ(c.ops().size(), 4u);
    EXPECT_EQ(c.ops()[0].name, "H");
    EXPECT_EQ(c.ops()[0].targets, std::vector<int>{3});
    EXPECT_EQ(c.ops()[1].kind, GateKind::kControlledSwap);
    EXPECT_EQ(c.ops()[1].targets, (std::vector<int>{0, 2}));
    EXPECT_EQ(c.ops()[1].controls, (std::vector<Control>{{3, 1}}));
    EXPECT_EQ(c.ops()[2].name, "H");
    EXPECT_EQ(c.ops()[3].name, "CX");
    EXPECT_EQ(c.ops()[3].controls, (std::vector<Control>{{1, 1}}));
    EXPECT_EQ(c.ops()[3].targets, std::vector<int>{3});

    EXPECT_THROW(build_cosine_classifier({0, 1, 1, 3}, 4), ValidationError);
    EXPECT_THROW(build_cosine_classifier({0, 1, 2, 4}, 4), ValidationError);
}

TEST(classify_single, trivial_cases) {
    EXPECT_NEAR(exact({1, 0}, 0, {1, 0}), 0.0, 1e-12);
    EXPECT_NEAR(exact({1, 0}, 0, {0, 1}), 0.5, 1e-12);
    EXPECT_NEAR(exact({1, 0}, 1, {1, 0}), 1.0, 1e-12);
}

TEST(classify_single, toy_rows) {
    EXPECT_NEAR(exact({1, 3}, 0, {2, 2}), 0.10, 1e-9);
    EXPECT_NEAR(exact({-2, 2}, 1, {2, 2}), 0.50, 1e-9);
    EXPECT_NEAR(exact({3, 0}, 0, {2, 2}), 0.25, 1e-9);
    EXPECT_NEAR(exact({3, 1}, 1, {2, 2}), 0.90, 1e-9);
}

TEST(classify_single, tie_breaks_to_zero) {
    const auto r = classify_single({-2, 2}, 1, {2, 2}, ExactMeasurement{});
    EXPECT_NEAR(r.prob_one, 0.5, 1e-12);
    EXPECT_EQ(decide(0.5), 0);
    EXPECT_EQ(decide(0.5000001), 1);
    EXPECT_EQ(classify_single({3, 1}, 1, {2, 2}, ExactMeasurement{}).decision, 1);
    EXPECT_EQ(classify_single({1, 3}, 0, {2, 2}, ExactMeasurement{}).decision, 0);
    EXPECT_FALSE(r.per_trajectory.has_value());
}

TEST(classify_single, zero_vector) {
    EXPECT_THROW(exact({0, 0}, 0, {1, 1}), EncodingError);
    EXPECT_THROW(exact({1, 1}, 0, {0, 0}), EncodingError);
}

TEST(classify_single, matches_closed_form_and_properties) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const auto a = testutil::random_vector(rng);
        const auto b = testutil::random_vector(rng);
        const int label = i % 2;
        const double p = exact(a, label, b);
        ASSERT_NEAR(p, oracle::prob_class1(a, label, b), 1e-9);
        if (label == 0) {
            ASSERT_GE(p, -1e-9);
            ASSERT_LE(p, 0.5 + 1e-9);
        } else {
            ASSERT_GE(p, 0.5 - 1e-9);
            ASSERT_LE(p, 1.0 + 1e-9);
        }
        const double c = scale(rng);
        ASSERT_NEAR(exact({c * a.x1, c * a.x2}, label, b), p, 1e-9);
        ASSERT_NEAR(exact(a, label, {c * b.x1, c * b.x2}), p, 1e-9);
        ASSERT_NEAR(exact(b, label, a), p, 1e-9);
    }
}

TEST(classify_single, shots_mode) {
    const auto a = classify_single({3, 1}, 1, {2, 2}, ShotMeasurement{8192, 7});
    const auto b = classify_single({3, 1}, 1, {2, 2}, ShotMeasurement{8192, 7});
    EXPECT_EQ(a.prob_one, b.prob_one);
    EXPECT_NEAR(a.prob_one, 0.9, 0.02);
    EXPECT_EQ(a.decision, 1);
}
