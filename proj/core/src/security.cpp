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
#include "qnc/security.hpp"

#include <cmath>

#include "qnc/errors.hpp"

namespace qnc {

const char* to_string(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::T1SourceToV1: return "T1-source-to-V1";
        case ScenarioTag::T2V1ToV2: return "T2-V1-to-V2";
        case ScenarioTag::T3V2ToSinks: return "T3-V2-to-sinks";
        case ScenarioTag::V1Internal: return "V1-internal";
        case ScenarioTag::V2Internal: return "V2-internal";
        case ScenarioTag::V1V2Collusion: return "V1-V2-collusion";
    }
    return "?";
}

InterceptScenario InterceptScenario::standard(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::T1SourceToV1:
        case ScenarioTag::V1Internal:
            return {tag, {EdgeId::P1ToV1, EdgeId::P2ToV1}};
        case ScenarioTag::T2V1ToV2:
        case ScenarioTag::V2Internal:
            return {tag, {EdgeId::V1ToV2}};
        case ScenarioTag::T3V2ToSinks:
            return {tag, {EdgeId::V2ToQ1, EdgeId::V2ToQ2}};
        case ScenarioTag::V1V2Collusion:
            return {tag, {EdgeId::P1ToV1, EdgeId::P2ToV1, EdgeId::V1ToV2}};
    }
    throw std::invalid_argument("unknown scenario tag");
}

std::vector<InterceptScenario> InterceptScenario::all() {
    return {standard(ScenarioTag::T1SourceToV1), standard(ScenarioTag::T2V1ToV2),
            standard(ScenarioTag::T3V2ToSinks),  standard(ScenarioTag::V1Internal),
            standard(ScenarioTag::V2Internal),   standard(ScenarioTag::V1V2Collusion)};
}

DensityMatrix key_averaged_ciphertext(Dimension dim, const DensityMatrix& sigma) {
    if (sigma.n_qudits() != 1) {
        throw std::invalid_argument("key_averaged_ciphertext: sigma must be a single qudit");
    }
    const int d = dim.value();
    CMatrix acc = CMatrix::Zero(d, d);
    for (int s1 = 0; s1 < d; ++s1) {
        for (int s2 = 0; s2 < d; ++s2) {
            const CMatrix u = u_gate(dim, s1, s2).entries();
            acc += u * sigma.entries() * u.adjoint();
        }
    }
    return DensityMatrix(dim, acc / static_cast<double>(d * d));
}

namespace {

// Per-run view of the audited carriers, extracted from a real trace.
// All carriers are (phased) basis states, so the audit tracks their indices;
// phases drop out of the projectors exactly.
struct CarrierDits {
    int v7, v8;         // kept at V1 after its evaluation (values from step 4)
    int v9_recv, v10_recv; // as received by V1 (step-4 payloads 9, 10)
    int v9, v10;        // as sent on the bottleneck edge (= received by V2)
    int v11, v12;       // ancilla copies sent by V2
};

int message_dit(const ProtocolTrace& trace, EdgeId edge, int particle) {
    for (const Message& m : trace.messages) {
        if (m.edge == edge && m.payload.particles.size() == 1 &&
            m.payload.particles[0] == particle) {
            const StateVector& s = m.payload.state;
            int idx = -1;
            for (std::int64_t i = 0; i < s.size(); ++i) {
                if (std::abs(s.amplitudes()[i]) > 1e-9) {
                    if (idx >= 0) throw ProtocolViolationError("audited carrier is not a basis state");
                    idx = static_cast<int>(i);
                }
            }
            return idx;
        }
    }
    throw ProtocolViolationError("trace lacks the audited message");
}

CarrierDits extract_dits(const ProtocolTrace& trace) {
    CarrierDits c{};
    c.v7 = message_dit(trace, EdgeId::P1ToV1, 7);
    c.v8 = message_dit(trace, EdgeId::P1ToV1, 8);
    c.v9_recv = message_dit(trace, EdgeId::P2ToV1, 9);
    c.v10_recv = message_dit(trace, EdgeId::P2ToV1, 10);
    c.v9 = message_dit(trace, EdgeId::V1ToV2, 9);
    c.v10 = message_dit(trace, EdgeId::V1ToV2, 10);
    const EdgeId e11 = trace.swapped_routing ? EdgeId::V2ToQ1 : EdgeId::V2ToQ2;
    c.v11 = message_dit(trace, e11, 11);
    c.v12 = message_dit(trace, e11, 12);
    return c;
}

class Histogram {
  public:
    Histogram(int d, int n_qudits) : d_(d), n_(n_qudits), counts_(pow_ll(d, n_qudits), 0.0) {}

    void add(std::initializer_list<int> dits) {
        std::int64_t idx = 0;
        for (int v : dits) idx = idx * d_ + v;
        counts_[idx] += 1.0;
        ++total_;
    }

    DensityMatrix to_density(Dimension dim) const {
        const std::int64_t n = static_cast<std::int64_t>(counts_.size());
        CMatrix m = CMatrix::Zero(n, n);
        for (std::int64_t i = 0; i < n; ++i) m(i, i) = counts_[i] / total_;
        return DensityMatrix(dim, std::move(m));
    }

  private:
    int d_;
    int n_;
    std::vector<double> counts_;
    double total_ = 0.0;
};

ProtocolTrace audited_trace(Dimension dim, SharedKeys keys, BellOutcome m1, BellOutcome m2) {
    // The audited carriers depend only on keys and outcomes; the transmitted
    // states are irrelevant, so fixed basis inputs keep the sweep cheap.
    SeededRng rng(1);
    RunOptions opt;
    opt.forced_outcomes = {{m1, m2}};
    return run_protocol(dim, StateVector::basis1(dim, 0), StateVector::basis1(dim, 0), keys, rng,
                        opt);
}

} // namespace

// Exhaustive enumeration of (s1, s2) x (m11, m12, m21, m22), or the single
// conditioned instance for the leaked-keys negative control.
namespace {

std::vector<CarrierDits> collect_views(Dimension dim, const AuditOptions& options) {
    const int d = dim.value();
    std::vector<CarrierDits> views;
    if (options.leak) {
        views.push_back(extract_dits(
            audited_trace(dim, options.leak->keys, options.leak->m1, options.leak->m2)));
        return views;
    }
    views.reserve(static_cast<size_t>(pow_ll(d, 6)));
    for (int s1 = 0; s1 < d; ++s1) {
        for (int s2 = 0; s2 < d; ++s2) {
            for (int m11 = 0; m11 < d; ++m11) {
                for (int m12 = 0; m12 < d; ++m12) {
                    for (int m21 = 0; m21 < d; ++m21) {
                        for (int m22 = 0; m22 < d; ++m22) {
                            views.push_back(extract_dits(
                                audited_trace(dim, SharedKeys{s1, s2}, BellOutcome{m11, m12},
                                              BellOutcome{m21, m22})));
                        }
                    }
                }
            }
        }
    }
    return views;
}

InterceptReport report_from_views(const InterceptScenario& scenario, Dimension dim,
                                  double tolerance, const std::vector<CarrierDits>& views) {
    const int d = dim.value();
    InterceptReport report{scenario, {}, tolerance, 0.0, false};

    auto per_particle = [&](const char* label, auto pick) {
        Histogram h(d, 1);
        for (const CarrierDits& v : views) h.add({pick(v)});
        DensityMatrix obs = h.to_density(dim);
        const double dist = trace_distance(obs, DensityMatrix::maximally_mixed(dim, 1));
        report.entries.push_back(InterceptEntry{label, std::move(obs), dist});
    };

    switch (scenario.tag) {
        case ScenarioTag::T1SourceToV1:
            per_particle("particle 7", [](const CarrierDits& v) { return v.v7; });
            per_particle("particle 8", [](const CarrierDits& v) { return v.v8; });
            per_particle("particle 9", [](const CarrierDits& v) { return v.v9_recv; });
            per_particle("particle 10", [](const CarrierDits& v) { return v.v10_recv; });
            break;
        case ScenarioTag::T2V1ToV2:
            per_particle("particle 9", [](const CarrierDits& v) { return v.v9; });
            per_particle("particle 10", [](const CarrierDits& v) { return v.v10; });
            break;
        case ScenarioTag::T3V2ToSinks:
            per_particle("particle 9", [](const CarrierDits& v) { return v.v9; });
            per_particle("particle 10", [](const CarrierDits& v) { return v.v10; });
            per_particle("particle 11", [](const CarrierDits& v) { return v.v11; });
            per_particle("particle 12", [](const CarrierDits& v) { return v.v12; });
            break;
        case ScenarioTag::V1Internal: {
            Histogram h(d, 4);
            for (const CarrierDits& v : views) h.add({v.v7, v.v8, v.v9_recv, v.v10_recv});
            DensityMatrix obs = h.to_density(dim);
            const double dist = trace_distance(obs, DensityMatrix::maximally_mixed(dim, 4));
            report.entries.push_back(
                InterceptEntry{"particles 7,8,9,10 joint (as received)", std::move(obs), dist});
            break;
        }
        case ScenarioTag::V2Internal: {
            Histogram h(d, 2);
            for (const CarrierDits& v : views) h.add({v.v9, v.v10});
            DensityMatrix obs = h.to_density(dim);
            const double dist = trace_distance(obs, DensityMatrix::maximally_mixed(dim, 2));
            report.entries.push_back(
                InterceptEntry{"particles 9,10 joint (as received)", std::move(obs), dist});
            break;
        }
        case ScenarioTag::V1V2Collusion: {
            // The ciphertext particles the two nodes jointly hold: 7,8 stay at
            // V1 through its evaluation, 9,10 are what V2 receives.
            Histogram h(d, 4);
            for (const CarrierDits& v : views) h.add({v.v7, v.v8, v.v9, v.v10});
            DensityMatrix obs = h.to_density(dim);
            const double dist = trace_distance(obs, DensityMatrix::maximally_mixed(dim, 4));
            report.entries.push_back(
                InterceptEntry{"particles 7,8,9,10 joint (collusion)", std::move(obs), dist});
            break;
        }
    }

    for (const InterceptEntry& e : report.entries) {
        report.max_distance = std::max(report.max_distance, e.distance);
    }
    report.passes = report.max_distance <= tolerance;
    return report;
}

} // namespace

InterceptReport intercept_reduced_state(const InterceptScenario& scenario, Dimension dim,
                                        double tolerance, const AuditOptions& options) {
    return report_from_views(scenario, dim, tolerance, collect_views(dim, options));
}

std::vector<InterceptReport> audit_all(Dimension dim, double tolerance,
                                       const AuditOptions& options) {
    const std::vector<CarrierDits> views = collect_views(dim, options);
    std::vector<InterceptReport> reports;
    for (const InterceptScenario& sc : InterceptScenario::all()) {
        reports.push_back(report_from_views(sc, dim, tolerance, views));
    }
    return reports;
}

} // namespace qnc
