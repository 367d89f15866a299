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

#include <map>
#include <variant>
#include <vector>

#include "qnc/qfhe.hpp"
#include "qnc/teleport.hpp"

namespace qnc {

// Butterfly network protocol crossing two qudit states:
//
//      P1 ──e1──> V1 <──e2── P2          P1, P2  sources (inputs |phi>, |psi>)
//       \          │          /           V1, V2  intermediate (evaluation only,
//        e6        e3 (bottleneck)                 never hold keys)
//         \        v        /             Q1, Q2  sinks
//          > Q2    V2    Q1 <
//               e5/  \e4
// plus the direct edges e6: P1 -> Q2 and e7: P2 -> Q1.
//
// Particles: 1 = |phi>, 2 = |psi>; 3,4 and 5,6 the pre-shared |psi_00>
// pairs (P1 holds 3,5; P2 holds 4,6); 7..10 the encrypted outcome dits;
// 11,12 the ancillas V2 prepares.
//
// Step schedule (step 1 is key pre-sharing, modeled as direct injection):
//   2  P1 Bell-measures (1,3) -> M1, particle 4 collapses at P2;
//      P2 Bell-measures (2,6) -> M2, particle 5 collapses at P1
//   3  P1 applies U^dag(M1) to 5, sends on e6; P2 applies U^dag(M2) to 4 (e7)
//   4  sources prepare |m11>_7 |m12>_8 / |m21>_9 |m22>_10, pad each with
//      U(s1,s2), send to V1 (e1, e2)
//   5  V1 evaluates CX_{7,9}, CX_{8,10}, forwards 9,10 on e3, keeps 7,8
//   6  V2 preps |0>_11, |0>_12, evaluates CX_{9,11}, CX_{10,12}, routes
//      9,10 -> Q1 (e4) and 11,12 -> Q2 (e5)   [swappable, see RunOptions]
//   7  Q1 decrypts with U^dag(s1, 2 s2), Q2 with U^dag(0, 2 s2)
//   8  sinks measure their carriers, obtaining (m11+m21, m12+m22), and
//      correct particles 4 / 5 with U(m11+m21, m12+m22)

enum class NodeId { P1, P2, V1, V2, Q1, Q2 };

enum class EdgeId {
    P1ToV1, // e1
    P2ToV1, // e2
    V1ToV2, // e3, the unique bottleneck edge
    V2ToQ1, // e4
    V2ToQ2, // e5
    P1ToQ2, // e6, direct
    P2ToQ1, // e7, direct
    // Pre-shared entanglement bookkeeping: delivery of the measurement
    // back-action on the remote Bell half. Not network edges.
    EprGroupA, // particle 4 materializes at P2
    EprGroupB, // particle 5 materializes at P1
};

const char* to_string(NodeId id);
const char* to_string(EdgeId id);
NodeId edge_destination(EdgeId id);

/// The two dits every honest party except V1/V2 shares before the run.
struct SharedKeys {
    int s1 = 0;
    int s2 = 0;
};

/// One or more particles (by label, 1..12) and their joint state.
struct QuditPayload {
    std::vector<int> particles;
    StateVector state;
};

struct Message {
    EdgeId edge;
    int step;
    QuditPayload payload;
};

// Node-local states. Relay nodes deliberately have no key or outcome
// fields: the type system is what keeps s1, s2, M1, M2 out of V1/V2.
struct SourceNodeState {
    StateVector input;
    SharedKeys keys;
    std::optional<StateVector> group_register; // 3-qudit register it measures in step 2
    std::optional<BellOutcome> forced_outcome;
    std::optional<BellOutcome> outcome;
    std::optional<StateVector> carrier; // particle 5 (P1) / 4 (P2) once collapsed
};

struct RelayNodeState {
    std::map<int, StateVector> held; // particle label -> state
};

struct SinkNodeState {
    SharedKeys keys;
    std::map<int, StateVector> held;
    std::optional<std::pair<int, int>> sums;
    std::optional<StateVector> output;
};

using NodeState = std::variant<SourceNodeState, RelayNodeState, SinkNodeState>;

struct NodeStepResult {
    NodeState state;
    std::vector<Message> outbox;
};

struct RunOptions {
    /// Replay fixed Bell outcomes (M1, M2) instead of sampling.
    std::optional<std::pair<BellOutcome, BellOutcome>> forced_outcomes;
    /// Route 11,12 to Q1 and 9,10 to Q2 instead; the sinks pick the matching
    /// decryption keys, and every observable is unchanged (both carrier
    /// pairs hold the same dit values).
    bool swap_carrier_routing = false;
};

/// Pure state-machine transition: consumes the messages addressed to this
/// node for this step and emits the outbox. run_protocol is exactly the
/// fixed schedule of node_step calls. Throws ProtocolViolationError on
/// messages at the wrong step or edge. `rng` is consumed only by source
/// measurements (step 2) and sink measurements (step 8).
NodeStepResult node_step(NodeId node, NodeState state, int step,
                         const std::vector<Message>& inbox, SeededRng& rng,
                         const RunOptions& options = {});

struct StepSnapshot {
    int step;
    std::vector<QuditPayload> registers; // live particles, factored, sorted by label
};

struct ProtocolTrace {
    Dimension dim;
    StateVector phi;
    StateVector psi;
    SharedKeys keys;
    BellOutcome m1; // {m11, m12}
    BellOutcome m2; // {m21, m22}
    std::vector<Message> messages;
    std::vector<StepSnapshot> snapshots;
    std::pair<int, int> sink_sums_q1{};
    std::pair<int, int> sink_sums_q2{};
    std::optional<StateVector> output_q1; // recovered |phi>
    std::optional<StateVector> output_q2; // recovered |psi>
    bool swapped_routing = false;
    int steps_completed = 0;
};

/// Runs steps 2..8 end to end. phi and psi must be single-qudit states of
/// the given dimension.
ProtocolTrace run_protocol(Dimension dim, const StateVector& phi, const StateVector& psi,
                           SharedKeys keys, SeededRng& rng, const RunOptions& options = {});

struct RecoveryReport {
    double fidelity_q1;
    double fidelity_q2;
    Cx phase_q1; // <phi|out_q1>, expected omega^{-m12*m21}
    Cx phase_q2; // <psi|out_q2>, expected omega^{-m11*m22}
    bool phases_match;
};

/// Fidelities |<input|output>| at both sinks plus the extracted global
/// phases, checked against omega^{-m12*m21} and omega^{-m11*m22}.
/// Throws ProtocolViolationError on an incomplete trace; degraded fidelity
/// (e.g. a corrupted payload) is reported, not thrown.
RecoveryReport verify_recovery(const ProtocolTrace& trace, double tol = kDefaultTol);

} // namespace qnc
