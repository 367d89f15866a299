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

#include <stdexcept>

namespace qnc {

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidGateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnsupportedDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MissingGadgetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ProtocolViolationError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qnc
