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
#include "qnc/rng.hpp"

#include <limits>
#include <stdexcept>

namespace qnc {

int SeededRng::uniform_int(int bound) {
    if (bound <= 0) throw std::invalid_argument("uniform_int: bound must be positive");
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    // Accept draws below the largest multiple of b that fits in 64 bits.
    const std::uint64_t zone = (std::numeric_limits<std::uint64_t>::max() / b) * b;
    std::uint64_t u;
    do {
        u = engine_();
    } while (u >= zone);
    return static_cast<int>(u % b);
}

} // namespace qnc
