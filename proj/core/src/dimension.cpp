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
#include "qnc/dimension.hpp"

#include <cmath>
#include <numbers>

namespace qnc {

Dimension::Dimension(int d) : d_(d) {
    if (d < 2) {
        throw UnsupportedDimensionError("qudit dimension must be >= 2, got " + std::to_string(d));
    }
    auto omega = std::make_shared<std::vector<Cx>>(d);
    auto tau = std::make_shared<std::vector<Cx>>(2 * d);
    for (int k = 0; k < 2 * d; ++k) {
        const double angle = std::numbers::pi * k / d;
        (*tau)[k] = Cx{std::cos(angle), std::sin(angle)};
        if (k % 2 == 0) (*omega)[k / 2] = (*tau)[k];
    }
    omega_ = std::move(omega);
    tau_ = std::move(tau);
}

std::int64_t pow_ll(int base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace qnc
