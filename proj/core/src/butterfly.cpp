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
#include "qnc/butterfly.hpp"

#include <algorithm>
#include <cmath>

#include "qnc/errors.hpp"

namespace qnc {

const char* to_string(NodeId id) {
    switch (id) {
        case NodeId::P1: return "P1";
        case NodeId::P2: return "P2";
        case NodeId::V1: return "V1";
        case NodeId::V2: return "V2";
        case NodeId::Q1: return "Q1";
        case NodeId::Q2: return "Q2";
    }
    return "?";
}

const char* to_string(EdgeId id) {
    switch (id) {
        case EdgeId::P1ToV1: return "e1:P1->V1";
        case EdgeId::P2ToV1: return "e2:P2->V1";
        case EdgeId::V1ToV2: return "e3:V1->V2";
        case EdgeId::V2ToQ1: return "e4:V2->Q1";
        case EdgeId::V2ToQ2: return "e5:V2->Q2";
        case EdgeId::P1ToQ2: return "e6:P1->Q2";
        case EdgeId::P2ToQ1: return "e7:P2->Q1";
        case EdgeId::EprGroupA: return "epr:collapse->P2";
        case EdgeId::EprGroupB: return "epr:collapse->P1";
    }
    return "?";
}

NodeId edge_destination(EdgeId id) {
    switch (id) {
        case EdgeId::P1ToV1:
        case EdgeId::P2ToV1: return NodeId::V1;
        case EdgeId::V1ToV2: return NodeId::V2;
        case EdgeId::V2ToQ1:
        case EdgeId::P2ToQ1: return NodeId::Q1;
        case EdgeId::V2ToQ2:
        case EdgeId::P1ToQ2: return NodeId::Q2;
        case EdgeId::EprGroupA: return NodeId::P2;
        case EdgeId::EprGroupB: return NodeId::P1;
    }
    throw ProtocolViolationError("unknown edge");
}

namespace {

struct BasisAmp {
    int index;
    Cx amp;
};

// The protocol's carriers are always phased computational basis states.
BasisAmp basis_amp(const StateVector& s) {
    if (s.n_qudits() != 1) throw ProtocolViolationError("carrier must be a single qudit");
    int idx = -1;
    for (std::int64_t i = 0; i < s.size(); ++i) {
        if (std::abs(s.amplitudes()[i]) > 1e-9) {
            if (idx >= 0) throw ProtocolViolationError("carrier is not a computational basis state");
            idx = static_cast<int>(i);
        }
    }
    if (idx < 0) throw ProtocolViolationError("carrier has no support");
    return BasisAmp{idx, s.amplitudes()[idx]};
}

// CX on a product of phased basis states stays a product: the control factor
// is untouched and the target index shifts by the control index, each factor
// keeping the phase it carried in. Equal to the joint two-qudit evaluation
// exactly: CX (c1|a> (x) c2|b>) = c1|a> (x) c2|a+b>.
StateVector cx_product_target(const StateVector& control, const StateVector& target) {
    const Dimension dim = control.dim();
    const BasisAmp c = basis_amp(control);
    const BasisAmp t = basis_amp(target);
    CVector v = CVector::Zero(dim.value());
    v[dim.mod(c.index + t.index)] = t.amp;
    return unchecked_state(dim, 1, std::move(v));
}

StateVector apply1(const StateVector& s, const UnitaryMatrix& u) {
    const int pos[1] = {0};
    return apply_unitary(s, u, pos);
}

const Message& expect_message(const std::vector<Message>& inbox, EdgeId edge, int step,
                              int particle) {
    for (const Message& m : inbox) {
        if (m.edge == edge && m.payload.particles.size() == 1 &&
            m.payload.particles[0] == particle) {
            if (m.step != step) {
                throw ProtocolViolationError("message for particle " + std::to_string(particle) +
                                             " arrived at the wrong step");
            }
            return m;
        }
    }
    throw ProtocolViolationError("missing message for particle " + std::to_string(particle));
}

BellOutcome source_measure(SourceNodeState& st, std::pair<int, int> pair, SeededRng& rng,
                           StateVector& residual_out) {
    if (!st.group_register) throw ProtocolViolationError("source has no register to measure");
    BellMeasurement m = st.forced_outcome
                            ? bell_measure_forced(*st.group_register, pair, *st.forced_outcome)
                            : bell_measure(*st.group_register, pair, rng);
    if (!m.residual) throw ProtocolViolationError("source register collapsed to nothing");
    residual_out = *m.residual;
    st.group_register.reset();
    st.outcome = m.outcome;
    return m.outcome;
}

} // namespace

NodeStepResult node_step(NodeId node, NodeState state, int step, const std::vector<Message>& inbox,
                         SeededRng& rng, const RunOptions& options) {
    NodeStepResult result{std::move(state), {}};
    const bool is_p1 = node == NodeId::P1;
    const bool is_q1 = node == NodeId::Q1;

    switch (node) {
        case NodeId::P1:
        case NodeId::P2: {
            auto& st = std::get<SourceNodeState>(result.state);
            const Dimension dim = st.input.dim();
            if (step == 2) {
                // P1 measures particles (1,3) of register (1,3,4); the residual is
                // particle 4, which materializes at P2. P2 measures (2,6) of
                // (2,5,6); the residual (particle 5) materializes at P1.
                StateVector residual = st.input; // placeholder, overwritten
                if (is_p1) {
                    source_measure(st, {0, 1}, rng, residual);
                    result.outbox.push_back(Message{EdgeId::EprGroupA, 2, {{4}, residual}});
                } else {
                    source_measure(st, {0, 2}, rng, residual);
                    result.outbox.push_back(Message{EdgeId::EprGroupB, 2, {{5}, residual}});
                }
                return result;
            }
            if (step == 3) {
                const int particle = is_p1 ? 5 : 4;
                const Message& m =
                    expect_message(inbox, is_p1 ? EdgeId::EprGroupB : EdgeId::EprGroupA, 2, particle);
                if (!st.outcome) throw ProtocolViolationError("step 3 before the step-2 measurement");
                StateVector carrier =
                    apply1(m.payload.state, u_gate(dim, st.outcome->m1, st.outcome->m2).adjoint());
                result.outbox.push_back(
                    Message{is_p1 ? EdgeId::P1ToQ2 : EdgeId::P2ToQ1, 3, {{particle}, carrier}});
                return result;
            }
            if (step == 4) {
                if (!st.outcome) throw ProtocolViolationError("step 4 before the step-2 measurement");
                const UnitaryMatrix pad = u_gate(dim, st.keys.s1, st.keys.s2);
                const int first = is_p1 ? 7 : 9;
                const int dits[2] = {st.outcome->m1, st.outcome->m2};
                for (int k = 0; k < 2; ++k) {
                    StateVector ct = apply1(StateVector::basis1(dim, dits[k]), pad);
                    result.outbox.push_back(Message{is_p1 ? EdgeId::P1ToV1 : EdgeId::P2ToV1, 4,
                                                    {{first + k}, ct}});
                }
                return result;
            }
            throw ProtocolViolationError("source node has no work at this step");
        }

        case NodeId::V1: {
            auto& st = std::get<RelayNodeState>(result.state);
            if (step != 5) throw ProtocolViolationError("V1 acts only at step 5");
            const StateVector c7 = expect_message(inbox, EdgeId::P1ToV1, 4, 7).payload.state;
            const StateVector c8 = expect_message(inbox, EdgeId::P1ToV1, 4, 8).payload.state;
            const StateVector c9 = expect_message(inbox, EdgeId::P2ToV1, 4, 9).payload.state;
            const StateVector c10 = expect_message(inbox, EdgeId::P2ToV1, 4, 10).payload.state;
            StateVector e9 = cx_product_target(c7, c9);
            StateVector e10 = cx_product_target(c8, c10);
            st.held.insert_or_assign(7, c7);
            st.held.insert_or_assign(8, c8);
            result.outbox.push_back(Message{EdgeId::V1ToV2, 5, {{9}, e9}});
            result.outbox.push_back(Message{EdgeId::V1ToV2, 5, {{10}, e10}});
            return result;
        }

        case NodeId::V2: {
            auto& st = std::get<RelayNodeState>(result.state);
            if (step != 6) throw ProtocolViolationError("V2 acts only at step 6");
            const StateVector c9 = expect_message(inbox, EdgeId::V1ToV2, 5, 9).payload.state;
            const StateVector c10 = expect_message(inbox, EdgeId::V1ToV2, 5, 10).payload.state;
            const Dimension dim = c9.dim();
            StateVector a11 = cx_product_target(c9, StateVector::basis1(dim, 0));
            StateVector a12 = cx_product_target(c10, StateVector::basis1(dim, 0));
            st.held.clear();
            const EdgeId to_q1 = EdgeId::V2ToQ1, to_q2 = EdgeId::V2ToQ2;
            if (!options.swap_carrier_routing) {
                result.outbox.push_back(Message{to_q1, 6, {{9}, c9}});
                result.outbox.push_back(Message{to_q1, 6, {{10}, c10}});
                result.outbox.push_back(Message{to_q2, 6, {{11}, a11}});
                result.outbox.push_back(Message{to_q2, 6, {{12}, a12}});
            } else {
                result.outbox.push_back(Message{to_q1, 6, {{11}, a11}});
                result.outbox.push_back(Message{to_q1, 6, {{12}, a12}});
                result.outbox.push_back(Message{to_q2, 6, {{9}, c9}});
                result.outbox.push_back(Message{to_q2, 6, {{10}, c10}});
            }
            return result;
        }

        case NodeId::Q1:
        case NodeId::Q2: {
            auto& st = std::get<SinkNodeState>(result.state);
            if (step == 7) {
                const EdgeId carrier_edge = is_q1 ? EdgeId::V2ToQ1 : EdgeId::V2ToQ2;
                const EdgeId payload_edge = is_q1 ? EdgeId::P2ToQ1 : EdgeId::P1ToQ2;
                const int payload_particle = is_q1 ? 4 : 5;
                // With the standard routing Q1 holds carriers 9,10 (decryption
                // key {s1, 2 s2}) and Q2 holds the ancilla copies 11,12
                // ({0, 2 s2}); the swap flag exchanges both consistently.
                const bool takes_originals = is_q1 != options.swap_carrier_routing;
                const int lo = takes_originals ? 9 : 11;
                const Message& mc1 = expect_message(inbox, carrier_edge, 6, lo);
                const Message& mc2 = expect_message(inbox, carrier_edge, 6, lo + 1);
                const Message& mp = expect_message(inbox, payload_edge, 3, payload_particle);
                const Dimension dim = mp.payload.state.dim();
                const UnitaryMatrix dec =
                    takes_originals
                        ? u_gate(dim, st.keys.s1, dim.mod(2LL * st.keys.s2)).adjoint()
                        : u_gate(dim, 0, dim.mod(2LL * st.keys.s2)).adjoint();
                st.held.insert_or_assign(lo, apply1(mc1.payload.state, dec));
                st.held.insert_or_assign(lo + 1, apply1(mc2.payload.state, dec));
                st.held.insert_or_assign(payload_particle, mp.payload.state);
                return result;
            }
            if (step == 8) {
                if (!inbox.empty()) throw ProtocolViolationError("unexpected messages at step 8");
                const int payload_particle = is_q1 ? 4 : 5;
                const bool takes_originals = is_q1 != options.swap_carrier_routing;
                const int lo = takes_originals ? 9 : 11;
                auto it1 = st.held.find(lo), it2 = st.held.find(lo + 1);
                auto itp = st.held.find(payload_particle);
                if (it1 == st.held.end() || it2 == st.held.end() || itp == st.held.end()) {
                    throw ProtocolViolationError("step 8 before step 7 delivered the particles");
                }
                MeasurementResult r1 = measure_computational(it1->second, 0, rng);
                MeasurementResult r2 = measure_computational(it2->second, 0, rng);
                it1->second = r1.collapsed;
                it2->second = r2.collapsed;
                st.sums = {r1.outcome, r2.outcome};
                const Dimension dim = itp->second.dim();
                st.output = apply1(itp->second, u_gate(dim, r1.outcome, r2.outcome));
                st.held.insert_or_assign(payload_particle, *st.output);
                return result;
            }
            throw ProtocolViolationError("sink node has no work at this step");
        }
    }
    throw ProtocolViolationError("unknown node");
}

namespace {

void snapshot_payload(std::vector<QuditPayload>& out, std::vector<int> particles,
                      const StateVector& state) {
    out.push_back(QuditPayload{std::move(particles), state});
}

StepSnapshot take_snapshot(int step, const std::map<NodeId, NodeState>& states,
                           const std::map<NodeId, std::vector<Message>>& pending) {
    StepSnapshot snap{step, {}};
    for (const auto& [node, state] : states) {
        if (const auto* src = std::get_if<SourceNodeState>(&state)) {
            if (src->group_register) {
                snapshot_payload(snap.registers,
                                 node == NodeId::P1 ? std::vector<int>{1, 3, 4}
                                                    : std::vector<int>{2, 5, 6},
                                 *src->group_register);
            }
        } else if (const auto* relay = std::get_if<RelayNodeState>(&state)) {
            for (const auto& [label, sv] : relay->held) {
                snapshot_payload(snap.registers, {label}, sv);
            }
        } else if (const auto* sink = std::get_if<SinkNodeState>(&state)) {
            for (const auto& [label, sv] : sink->held) {
                snapshot_payload(snap.registers, {label}, sv);
            }
        }
    }
    for (const auto& [node, msgs] : pending) {
        for (const Message& m : msgs) {
            snapshot_payload(snap.registers, m.payload.particles, m.payload.state);
        }
    }
    std::sort(snap.registers.begin(), snap.registers.end(),
              [](const QuditPayload& a, const QuditPayload& b) {
                  return a.particles < b.particles;
              });
    return snap;
}

} // namespace

ProtocolTrace run_protocol(Dimension dim, const StateVector& phi, const StateVector& psi,
                           SharedKeys keys, SeededRng& rng, const RunOptions& options) {
    if (phi.dim() != dim || psi.dim() != dim) {
        throw DimensionMismatchError("run_protocol: input state dimension mismatch");
    }
    if (phi.n_qudits() != 1 || psi.n_qudits() != 1) {
        throw DimensionMismatchError("run_protocol: inputs must be single-qudit states");
    }
    keys.s1 = dim.mod(keys.s1);
    keys.s2 = dim.mod(keys.s2);
    if (options.forced_outcomes) {
        const auto& [f1, f2] = *options.forced_outcomes;
        for (int v : {f1.m1, f1.m2, f2.m1, f2.m2}) {
            if (v < 0 || v >= dim.value()) {
                throw DimensionMismatchError("run_protocol: forced outcome out of range");
            }
        }
    }

    const StateVector epr = bell_state(dim, 0, 0);
    std::map<NodeId, NodeState> states;
    {
        SourceNodeState p1{phi, keys, tensor(phi, epr), std::nullopt, std::nullopt, std::nullopt};
        SourceNodeState p2{psi, keys, tensor(psi, epr), std::nullopt, std::nullopt, std::nullopt};
        if (options.forced_outcomes) {
            p1.forced_outcome = options.forced_outcomes->first;
            p2.forced_outcome = options.forced_outcomes->second;
        }
        states.emplace(NodeId::P1, std::move(p1));
        states.emplace(NodeId::P2, std::move(p2));
        states.emplace(NodeId::V1, RelayNodeState{});
        states.emplace(NodeId::V2, RelayNodeState{});
        states.emplace(NodeId::Q1, SinkNodeState{keys, {}, std::nullopt, std::nullopt});
        states.emplace(NodeId::Q2, SinkNodeState{keys, {}, std::nullopt, std::nullopt});
    }

    ProtocolTrace trace{dim,  phi, psi, keys, {}, {}, {}, {}, {}, {},
                        std::nullopt, std::nullopt, options.swap_carrier_routing, 0};

    std::map<NodeId, std::vector<Message>> pending;
    const std::vector<std::pair<int, std::vector<NodeId>>> schedule = {
        {2, {NodeId::P1, NodeId::P2}}, {3, {NodeId::P1, NodeId::P2}},
        {4, {NodeId::P1, NodeId::P2}}, {5, {NodeId::V1}},
        {6, {NodeId::V2}},             {7, {NodeId::Q1, NodeId::Q2}},
        {8, {NodeId::Q1, NodeId::Q2}},
    };
    for (const auto& [step, nodes] : schedule) {
        // Messages emitted during a step are deliverable from the next step on.
        std::map<NodeId, std::vector<Message>> outgoing;
        for (NodeId node : nodes) {
            std::vector<Message> inbox;
            if (auto it = pending.find(node); it != pending.end()) {
                inbox = std::move(it->second);
                pending.erase(it);
            }
            NodeStepResult res = node_step(node, std::move(states.at(node)), step, inbox, rng, options);
            states.at(node) = std::move(res.state);
            for (Message& m : res.outbox) {
                trace.messages.push_back(m);
                outgoing[edge_destination(m.edge)].push_back(std::move(m));
            }
        }
        for (auto& [dest, msgs] : outgoing) {
            auto& bucket = pending[dest];
            bucket.insert(bucket.end(), std::make_move_iterator(msgs.begin()),
                          std::make_move_iterator(msgs.end()));
        }
        trace.snapshots.push_back(take_snapshot(step, states, pending));
        trace.steps_completed = step;
    }

    const auto& p1 = std::get<SourceNodeState>(states.at(NodeId::P1));
    const auto& p2 = std::get<SourceNodeState>(states.at(NodeId::P2));
    const auto& q1 = std::get<SinkNodeState>(states.at(NodeId::Q1));
    const auto& q2 = std::get<SinkNodeState>(states.at(NodeId::Q2));
    trace.m1 = *p1.outcome;
    trace.m2 = *p2.outcome;
    trace.sink_sums_q1 = *q1.sums;
    trace.sink_sums_q2 = *q2.sums;
    trace.output_q1 = q1.output;
    trace.output_q2 = q2.output;
    return trace;
}

RecoveryReport verify_recovery(const ProtocolTrace& trace, double tol) {
    if (trace.steps_completed < 8 || !trace.output_q1 || !trace.output_q2) {
        throw ProtocolViolationError("verify_recovery: trace is incomplete");
    }
    RecoveryReport rep{};
    rep.phase_q1 = trace.phi.inner(*trace.output_q1);
    rep.phase_q2 = trace.psi.inner(*trace.output_q2);
    rep.fidelity_q1 = std::abs(rep.phase_q1);
    rep.fidelity_q2 = std::abs(rep.phase_q2);
    const Cx expect_q1 = trace.dim.omega(-static_cast<long long>(trace.m1.m2) * trace.m2.m1);
    const Cx expect_q2 = trace.dim.omega(-static_cast<long long>(trace.m1.m1) * trace.m2.m2);
    rep.phases_match =
        std::abs(rep.phase_q1 - expect_q1) <= tol && std::abs(rep.phase_q2 - expect_q2) <= tol;
    return rep;
}

} // namespace qnc
