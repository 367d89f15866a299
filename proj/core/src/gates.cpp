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
#include "qnc/gates.hpp"

#include <cmath>

#include "qnc/errors.hpp"

namespace qnc {

UnitaryMatrix pauli_x(Dimension dim) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) m((j + 1) % d, j) = Cx{1.0, 0.0};
    return UnitaryMatrix(dim, 1, std::move(m));
}

UnitaryMatrix pauli_y(Dimension dim) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) m((j + 1) % d, j) = -dim.tau(2LL * j - 1);
    return UnitaryMatrix(dim, 1, std::move(m));
}

UnitaryMatrix pauli_z(Dimension dim) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = dim.omega(j);
    return UnitaryMatrix(dim, 1, std::move(m));
}

UnitaryMatrix hadamard(Dimension dim) {
    const int d = dim.value();
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    CMatrix m(d, d);
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) m(k, j) = scale * dim.omega(static_cast<long long>(j) * k);
    }
    return UnitaryMatrix(dim, 1, std::move(m));
}

UnitaryMatrix phase_s(Dimension dim) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = dim.tau(static_cast<long long>(j - d + 2) * j);
    return UnitaryMatrix(dim, 1, std::move(m));
}

UnitaryMatrix cx(Dimension dim) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) m(a * d + (a + b) % d, a * d + b) = Cx{1.0, 0.0};
    }
    return UnitaryMatrix(dim, 2, std::move(m));
}

TGateSpec::TGateSpec(Dimension dim_, std::vector<int> t_) : dim(dim_), t(std::move(t_)) {
    if (static_cast<int>(t.size()) != dim.value()) {
        throw DimensionMismatchError("T-gate spec needs exactly d phase exponents");
    }
    for (int& v : t) v = dim.mod(v);
}

UnitaryMatrix t_gate(const TGateSpec& spec) {
    const int d = spec.dim.value();
    if (d <= 3) {
        throw UnsupportedDimensionError("T_t is defined only for d > 3");
    }
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) m(j, j) = spec.dim.omega(spec.t[j]);
    return UnitaryMatrix(spec.dim, 1, std::move(m));
}

UnitaryMatrix u_gate(Dimension dim, int m1, int m2) {
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        m(j, dim.mod(j + m2)) = dim.omega(static_cast<long long>(j) * m1);
    }
    return UnitaryMatrix(dim, 1, std::move(m));
}

StateVector bell_state(Dimension dim, int m1, int m2) {
    const int d = dim.value();
    CVector v = CVector::Zero(static_cast<std::int64_t>(d) * d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        v[static_cast<std::int64_t>(j) * d + dim.mod(j + m2)] =
            scale * dim.omega(static_cast<long long>(j) * m1);
    }
    return unchecked_state(dim, 2, std::move(v));
}

std::string GateId::name() const {
    switch (tag) {
        case Tag::X: return "X";
        case Tag::Y: return "Y";
        case Tag::Z: return "Z";
        case Tag::H: return "H";
        case Tag::S: return "S";
        case Tag::T: return "T";
        case Tag::CX: return "CX";
    }
    return "?";
}

UnitaryMatrix gate_matrix(const GateId& gate, Dimension dim) {
    switch (gate.tag) {
        case GateId::Tag::X: return pauli_x(dim);
        case GateId::Tag::Y: return pauli_y(dim);
        case GateId::Tag::Z: return pauli_z(dim);
        case GateId::Tag::H: return hadamard(dim);
        case GateId::Tag::S: return phase_s(dim);
        case GateId::Tag::T:
            if (!gate.t_spec) throw InvalidGateError("T gate id without a t-vector");
            if (gate.t_spec->dim != dim) throw DimensionMismatchError("T spec dimension mismatch");
            return t_gate(*gate.t_spec);
        case GateId::Tag::CX: return cx(dim);
    }
    throw InvalidGateError("unknown gate tag");
}

UnitaryMatrix pad_xz(Dimension dim, int p, int q) {
    // X^p Z^q in one pass: |j> -> omega^{q j} |j+p>.
    const int d = dim.value();
    CMatrix m = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        m(dim.mod(j + p), j) = dim.omega(static_cast<long long>(q) * j);
    }
    return UnitaryMatrix(dim, 1, std::move(m));
}

} // namespace qnc
