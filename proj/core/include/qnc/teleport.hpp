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

#include <optional>
#include <utility>

#include "qnc/gates.hpp"

namespace qnc {

/// Outcome (m1, m2) of a Bell-basis measurement on a qudit pair.
struct BellOutcome {
    int m1 = 0;
    int m2 = 0;
    friend bool operator==(const BellOutcome&, const BellOutcome&) = default;
};

struct BellMeasurement {
    BellOutcome outcome;
    double probability;
    /// Remaining register with the measured pair removed (order of the other
    /// qudits preserved); nullopt when the pair was the whole register.
    std::optional<StateVector> residual;
};

/// Projective measurement of the pair onto the Bell basis, sampled through
/// the injected generator. Measuring a one-qudit state teleported through
/// |psi_00> leaves the partner qudit in U^dag(m1, m2)|phi>, each outcome
/// having probability 1/d^2.
BellMeasurement bell_measure(const StateVector& state, std::pair<int, int> pair,
                             SeededRng& rng);

/// Forced-outcome variant for replaying fixed measurement records: projects
/// onto the given outcome instead of sampling (the reported probability is
/// the Born weight that outcome would have had).
BellMeasurement bell_measure_forced(const StateVector& state, std::pair<int, int> pair,
                                    BellOutcome forced);

/// Teleportation correction: applies U(m1, m2) to the target qudit.
StateVector correct(const StateVector& state, BellOutcome outcome, int target = 0);

} // namespace qnc
