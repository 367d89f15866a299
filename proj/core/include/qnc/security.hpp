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
#pragma once

#include "qnc/butterfly.hpp"

namespace qnc {

// Security audit: every state an eavesdropper or dishonest intermediate
// node can inspect, averaged exhaustively over the uniform keys (s1, s2)
// and uniform outcomes (M1, M2) from real protocol traces, must equal the
// maximally mixed state on the intercepted subsystems. The attacker model
// is passive intercept-and-inspect; averages are exact enumerations over
// all d^6 (keys x outcomes) configurations, never Monte Carlo.

enum class ScenarioTag {
    T1SourceToV1,  // per-particle 7..10 as sent on e1/e2
    T2V1ToV2,      // per-particle 9,10 as sent on e3
    T3V2ToSinks,   // per-particle 9..12 as sent on e4/e5
    V1Internal,    // joint of V1's received ciphertexts (7,8,9,10)
    V2Internal,    // joint of V2's received ciphertexts (9,10)
    V1V2Collusion, // joint of 7,8 (kept at V1) with 9,10 (received by V2)
};

const char* to_string(ScenarioTag tag);

struct InterceptScenario {
    ScenarioTag tag;
    std::vector<EdgeId> edges;

    static InterceptScenario standard(ScenarioTag tag);
    static std::vector<InterceptScenario> all();
};

/// One audited subsystem: its exhaustively averaged state and the trace
/// distance to the maximally mixed reference of the same size.
struct InterceptEntry {
    std::string subsystem;
    DensityMatrix observed;
    double distance;
};

struct InterceptReport {
    InterceptScenario scenario;
    std::vector<InterceptEntry> entries;
    double tolerance;
    double max_distance;
    bool passes; // max_distance <= tolerance
};

/// Negative-control conditioning: the attacker knows the keys and inspects a
/// single run (no averaging), so every intercepted carrier is a pure state
/// at trace distance exactly 1 - 1/d from the mixed reference.
struct LeakedConditioning {
    SharedKeys keys;
    BellOutcome m1;
    BellOutcome m2;
};

struct AuditOptions {
    std::optional<LeakedConditioning> leak;
};

/// (1/d^2) sum over all (s1,s2) of U(s1,s2) sigma U^dag(s1,s2), by exhaustive
/// key enumeration. Equals I/d for every single-qudit sigma.
DensityMatrix key_averaged_ciphertext(Dimension dim, const DensityMatrix& sigma);

/// Builds the scenario's intercepted states from real protocol traces over
/// every (keys, outcomes) configuration and compares against I/d^k.
/// Non-passing reports are data, not errors.
InterceptReport intercept_reduced_state(const InterceptScenario& scenario, Dimension dim,
                                        double tolerance = kDefaultTol,
                                        const AuditOptions& options = {});

/// All six scenarios; overall pass iff every report passes.
std::vector<InterceptReport> audit_all(Dimension dim, double tolerance = kDefaultTol,
                                       const AuditOptions& options = {});

} // namespace qnc
