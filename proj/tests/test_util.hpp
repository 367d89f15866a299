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

#include <Eigen/QR>

#include "qnc/state.hpp"

namespace qnc::testutil {

inline StateVector random_state(Dimension dim, int n, SeededRng& rng) {
    const std::int64_t size = pow_ll(dim.value(), n);
    CVector v(size);
    for (std::int64_t i = 0; i < size; ++i) {
        v[i] = Cx{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
    }
    return make_state(dim, v);
}

inline DensityMatrix random_density(Dimension dim, int n, SeededRng& rng) {
    const std::int64_t size = pow_ll(dim.value(), n);
    CMatrix a(size, size);
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j < size; ++j) {
            a(i, j) = Cx{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
        }
    }
    CMatrix rho = a * a.adjoint();
    return DensityMatrix(dim, rho / rho.trace().real());
}

inline UnitaryMatrix random_unitary(Dimension dim, int n, SeededRng& rng) {
    const std::int64_t size = pow_ll(dim.value(), n);
    CMatrix a(size, size);
    for (std::int64_t i = 0; i < size; ++i) {
        for (std::int64_t j = 0; j < size; ++j) {
            a(i, j) = Cx{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    return UnitaryMatrix(dim, n, std::move(q));
}

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qnc::testutil
