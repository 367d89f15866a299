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

#include <cstdint>
#include <random>

namespace qnc {

/// Deterministic random source. All randomness in the library flows through
/// an injected SeededRng; there is no ambient entropy anywhere.
///
/// The generator is MT19937-64 exactly as specified by the C++ standard
/// (std::mt19937_64 seeded with the 64-bit seed), so the raw stream is
/// bit-identical across platforms and reimplementable in any language.
/// Derived draws avoid std::*_distribution (whose output is
/// implementation-defined) and use two fixed recipes:
///   - uniform_int(n): draw 64-bit words u, rejecting
///     u >= floor((2^64 - 1)/n) * n, then return u mod n (the accepted
///     window is a whole multiple of n, so the result is unbiased);
///   - uniform_double(): top 53 bits of one draw scaled by 2^-53, in [0,1).
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    int uniform_int(int bound);

    double uniform_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qnc
