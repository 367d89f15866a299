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

#include <string>
#include <utility>
#include <vector>

#include "qnc/butterfly.hpp"
#include "qnc/pauli_frame.hpp"
#include "qnc/security.hpp"

namespace qnc {

// Machine-readable run reports. The text form is a structured key/value +
// table document with deterministic bytes for a fixed config and seed; the
// same document can be emitted as JSON. Reals are printed with 12
// significant digits, complex numbers as "(re, im)" pairs.

std::string fmt_real(double x);
std::string fmt_complex(Cx z);

struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ReportSection {
    std::string title;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<ReportTable> tables;
};

struct Report {
    std::string schema_version = "1";
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ReportSection> sections;
    bool pass = false;
};

enum class ReportFormat { Text, Json };

std::string render(const Report& report, ReportFormat format);

// Section builders used by the CLI and by tests.
ReportSection section_from_trace(const ProtocolTrace& trace, const RecoveryReport& recovery);
ReportSection section_from_intercept(const InterceptReport& report);
ReportSection section_from_rule(const RuleReport& report);

} // namespace qnc
