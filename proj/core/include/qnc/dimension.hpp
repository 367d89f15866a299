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

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "qnc/errors.hpp"

namespace qnc {

using Cx = std::complex<double>;

/// Comparison tolerance used throughout unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

/// Qudit dimension d >= 2. Carries the primitive d-th root of unity
/// omega = e^{2*pi*i/d} and the primitive 2d-th root tau = e^{i*pi/d}
/// (tau^2 = omega), with all powers precomputed once so repeated phase
/// arithmetic reduces exponents instead of re-multiplying.
class Dimension {
  public:
    explicit Dimension(int d);

    int value() const { return d_; }

    /// omega^power with the exponent reduced mod d (negative powers fine).
    Cx omega(long long power = 1) const { return (*omega_)[mod(power)]; }

    /// tau^power with the exponent reduced mod 2d.
    Cx tau(long long power = 1) const { return (*tau_)[mod2d(power)]; }

    /// Canonical residue of x in [0, d).
    int mod(long long x) const {
        long long r = x % d_;
        return static_cast<int>(r < 0 ? r + d_ : r);
    }

    /// Canonical residue of x in [0, 2d).
    int mod2d(long long x) const {
        long long m = 2LL * d_;
        long long r = x % m;
        return static_cast<int>(r < 0 ? r + m : r);
    }

    friend bool operator==(const Dimension& a, const Dimension& b) { return a.d_ == b.d_; }
    friend bool operator!=(const Dimension& a, const Dimension& b) { return a.d_ != b.d_; }

  private:
    int d_;
    std::shared_ptr<const std::vector<Cx>> omega_; // d entries
    std::shared_ptr<const std::vector<Cx>> tau_;   // 2d entries
};

/// d^n as a 64-bit size, for register bookkeeping.
std::int64_t pow_ll(int base, int exp);

} // namespace qnc
