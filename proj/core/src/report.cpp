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
#include "qnc/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qnc {

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string fmt_complex(Cx z) {
    return "(" + fmt_real(z.real()) + ", " + fmt_real(z.imag()) + ")";
}

namespace {

std::string fmt_real3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "schema_version: " << r.schema_version << "\n";
    os << "command: " << r.command << "\n";
    os << "[config]\n";
    for (const auto& [k, v] : r.config) os << k << ": " << v << "\n";
    for (const auto& s : r.sections) {
        os << "\n[" << s.title << "]\n";
        for (const auto& [k, v] : s.fields) os << k << ": " << v << "\n";
        for (const auto& t : s.tables) {
            os << "[[" << t.name << "]]\n";
            os << join(t.columns, " | ") << "\n";
            for (const auto& row : t.rows) os << join(row, " | ") << "\n";
        }
    }
    os << "\npass: " << (r.pass ? "true" : "false") << "\n";
    return os.str();
}

std::string render_json(const Report& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["command"] = r.command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = std::move(cfg);
    nlohmann::ordered_json sections = nlohmann::ordered_json::array();
    for (const auto& s : r.sections) {
        nlohmann::ordered_json js;
        js["title"] = s.title;
        nlohmann::ordered_json fields = nlohmann::ordered_json::object();
        for (const auto& [k, v] : s.fields) fields[k] = v;
        js["fields"] = std::move(fields);
        nlohmann::ordered_json tables = nlohmann::ordered_json::array();
        for (const auto& t : s.tables) {
            nlohmann::ordered_json jt;
            jt["name"] = t.name;
            jt["columns"] = t.columns;
            jt["rows"] = t.rows;
            tables.push_back(std::move(jt));
        }
        js["tables"] = std::move(tables);
        sections.push_back(std::move(js));
    }
    j["sections"] = std::move(sections);
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

} // namespace

std::string render(const Report& report, ReportFormat format) {
    return format == ReportFormat::Text ? render_text(report) : render_json(report);
}

ReportSection section_from_trace(const ProtocolTrace& trace, const RecoveryReport& recovery) {
    ReportSection s;
    s.title = "protocol-run";
    s.fields.emplace_back("d", std::to_string(trace.dim.value()));
    s.fields.emplace_back("keys", std::to_string(trace.keys.s1) + "," + std::to_string(trace.keys.s2));
    s.fields.emplace_back("m1", std::to_string(trace.m1.m1) + "," + std::to_string(trace.m1.m2));
    s.fields.emplace_back("m2", std::to_string(trace.m2.m1) + "," + std::to_string(trace.m2.m2));
    s.fields.emplace_back("sink_sums_q1", std::to_string(trace.sink_sums_q1.first) + "," +
                                              std::to_string(trace.sink_sums_q1.second));
    s.fields.emplace_back("sink_sums_q2", std::to_string(trace.sink_sums_q2.first) + "," +
                                              std::to_string(trace.sink_sums_q2.second));
    s.fields.emplace_back("carrier_routing", trace.swapped_routing ? "swapped" : "standard");
    s.fields.emplace_back("fidelity_q1", fmt_real(recovery.fidelity_q1));
    s.fields.emplace_back("fidelity_q2", fmt_real(recovery.fidelity_q2));
    s.fields.emplace_back("phase_q1", fmt_complex(recovery.phase_q1));
    s.fields.emplace_back("phase_q2", fmt_complex(recovery.phase_q2));
    s.fields.emplace_back("phases_match", recovery.phases_match ? "true" : "false");
    for (const StepSnapshot& snap : trace.snapshots) {
        ReportTable t;
        t.name = "step-" + std::to_string(snap.step) + "-registers";
        t.columns = {"particles", "index", "re", "im"};
        for (const QuditPayload& p : snap.registers) {
            std::vector<std::string> labels;
            for (int x : p.particles) labels.push_back(std::to_string(x));
            const std::string who = join(labels, ",");
            for (std::int64_t i = 0; i < p.state.size(); ++i) {
                const Cx a = p.state.amplitudes()[i];
                t.rows.push_back({who, std::to_string(i), fmt_real(a.real()), fmt_real(a.imag())});
            }
        }
        s.tables.push_back(std::move(t));
    }
    return s;
}

ReportSection section_from_intercept(const InterceptReport& report) {
    ReportSection s;
    s.title = std::string("audit-") + to_string(report.scenario.tag);
    std::vector<std::string> edges;
    for (EdgeId e : report.scenario.edges) edges.push_back(to_string(e));
    s.fields.emplace_back("edges", join(edges, "; "));
    s.fields.emplace_back("tolerance", fmt_real(report.tolerance));
    s.fields.emplace_back("max_distance", fmt_real3(report.max_distance));
    s.fields.emplace_back("passes", report.passes ? "true" : "false");
    ReportTable t;
    t.name = "subsystems";
    t.columns = {"subsystem", "trace_distance_to_mixed"};
    for (const InterceptEntry& e : report.entries) {
        t.rows.push_back({e.subsystem, fmt_real3(e.distance)});
    }
    s.tables.push_back(std::move(t));
    return s;
}

ReportSection section_from_rule(const RuleReport& report) {
    ReportSection s;
    s.title = "rule-" + report.gate.name() + "-d" + std::to_string(report.d);
    if (report.gate.tag == GateId::Tag::T && report.gate.t_spec) {
        std::vector<std::string> ts;
        for (int v : report.gate.t_spec->t) ts.push_back(std::to_string(v));
        s.fields.emplace_back("t_vector", join(ts, ","));
    }
    s.fields.emplace_back("holds_exactly", report.holds_exactly ? "true" : "false");
    s.fields.emplace_back("holds_up_to_phase", report.holds_up_to_phase ? "true" : "false");
    s.fields.emplace_back("residual_phase", fmt_complex(report.residual_phase));
    s.fields.emplace_back("nominal_update_correct", report.nominal_update_correct ? "true" : "false");
    s.fields.emplace_back("certified_update",
                          report.certified_update.empty() ? "-" : report.certified_update);
    s.fields.emplace_back("corrected_update", report.corrected_update.value_or("-"));
    if (!report.note.empty()) s.fields.emplace_back("note", report.note);
    return s;
}

} // namespace qnc
