// Copyright 2026 The qnc authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <doctest.h>

#include "qnc/security.hpp"
#include "test_util.hpp"

using namespace qnc;
using namespace qnc::testutil;

TEST_CASE("key-averaged pad of any single-qudit state is maximally mixed") {
    Dimension d3(3);
    auto basis0 = StateVector::basis1(d3, 0).to_density();
    CHECK(max_abs_diff(key_averaged_ciphertext(d3, basis0).entries(),
                       CMatrix::Identity(3, 3) / 3.0) < 1e-12);

    // The mixed state is a fixed point.
    auto mixed = DensityMatrix::maximally_mixed(d3, 1);
    CHECK(max_abs_diff(key_averaged_ciphertext(d3, mixed).entries(), mixed.entries()) < 1e-12);

    // Random rank-1 projector at d=5.
    Dimension d5(5);
    SeededRng rng(42);
    auto psi = random_state(d5, 1, rng);
    CHECK(max_abs_diff(key_averaged_ciphertext(d5, psi.to_density()).entries(),
                       CMatrix::Identity(5, 5) / 5.0) < 1e-12);

    for (int d : {2, 3, 5, 7}) {
        Dimension dim(d);
        auto sigma = random_density(dim, 1, rng);
        CHECK(trace_distance(key_averaged_ciphertext(dim, sigma),
                             DensityMatrix::maximally_mixed(dim, 1)) < 1e-12);
    }

    CHECK_THROWS_AS(key_averaged_ciphertext(d3, DensityMatrix::maximally_mixed(d3, 2)),
                    std::invalid_argument);
}

TEST_CASE("per-particle intercepts are maximally mixed at d = 2 and 3") {
    for (int d : {2, 3}) {
        Dimension dim(d);
        for (ScenarioTag tag :
             {ScenarioTag::T1SourceToV1, ScenarioTag::T2V1ToV2, ScenarioTag::T3V2ToSinks}) {
            auto rep = intercept_reduced_state(InterceptScenario::standard(tag), dim, 1e-9);
            CHECK(rep.passes);
            CHECK(rep.max_distance < 1e-9);
            const size_t expected_entries = tag == ScenarioTag::T2V1ToV2 ? 2 : 4;
            CHECK(rep.entries.size() == expected_entries);
            for (const auto& e : rep.entries) CHECK(e.observed.n_qudits() == 1);
        }
    }
}

TEST_CASE("joint views of the intermediate nodes are maximally mixed") {
    for (int d : {2, 3}) {
        Dimension dim(d);
        auto v1 = intercept_reduced_state(InterceptScenario::standard(ScenarioTag::V1Internal),
                                          dim, 1e-9);
        CHECK(v1.passes);
        REQUIRE(v1.entries.size() == 1);
        CHECK(v1.entries[0].observed.n_qudits() == 4);

        auto v2 = intercept_reduced_state(InterceptScenario::standard(ScenarioTag::V2Internal),
                                          dim, 1e-9);
        CHECK(v2.passes);
        CHECK(v2.entries[0].observed.n_qudits() == 2);

        auto coll = intercept_reduced_state(
            InterceptScenario::standard(ScenarioTag::V1V2Collusion), dim, 1e-9);
        CHECK(coll.passes);
        CHECK(coll.entries[0].observed.n_qudits() == 4);
    }
}

TEST_CASE("audit_all returns six passing reports") {
    for (int d : {2, 3}) {
        auto reports = audit_all(Dimension(d), 1e-9);
        CHECK(reports.size() == 6);
        for (const auto& r : reports) {
            CHECK(r.passes);
            CHECK(r.max_distance < 1e-9);
        }
    }
}

TEST_CASE("bottleneck reductions stay mixed at d = 5") {
    Dimension d5(5);
    auto rep = intercept_reduced_state(InterceptScenario::standard(ScenarioTag::T2V1ToV2), d5,
                                       1e-9);
    CHECK(rep.passes);
    for (const auto& e : rep.entries) CHECK(e.distance < 1e-9);
}

TEST_CASE("leaked keys collapse the intercepted carriers to pure states") {
    Dimension d3(3);
    AuditOptions options;
    options.leak = LeakedConditioning{SharedKeys{2, 1}, BellOutcome{0, 1}, BellOutcome{1, 2}};
    auto rep = intercept_reduced_state(InterceptScenario::standard(ScenarioTag::T1SourceToV1), d3,
                                       1e-9, options);
    CHECK_FALSE(rep.passes);
    for (const auto& e : rep.entries) {
        // A pure state sits at trace distance exactly 1 - 1/d from I/d.
        CHECK(std::abs(e.distance - (1.0 - 1.0 / 3.0)) < 1e-9);
    }

    auto all = audit_all(d3, 1e-9, options);
    bool any_pass = false;
    for (const auto& r : all) any_pass = any_pass || r.passes;
    CHECK_FALSE(any_pass);
}

TEST_CASE("scenario edge sets match the topology") {
    auto t2 = InterceptScenario::standard(ScenarioTag::T2V1ToV2);
    REQUIRE(t2.edges.size() == 1);
    CHECK(t2.edges[0] == EdgeId::V1ToV2);
    auto coll = InterceptScenario::standard(ScenarioTag::V1V2Collusion);
    CHECK(coll.edges.size() == 3);
}
