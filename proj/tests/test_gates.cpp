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
#include <doctest.h>

#include "qnc/errors.hpp"
#include "qnc/gates.hpp"
#include "test_util.hpp"

using namespace qnc;
using namespace qnc::testutil;

namespace {
CMatrix mpow(const CMatrix& m, int k) {
    CMatrix r = CMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}
} // namespace

TEST_CASE("pauli_x at d=2 is the bit flip") {
    Dimension d2(2);
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    CHECK(max_abs_diff(pauli_x(d2).entries(), x) < 1e-12);
}

TEST_CASE("X^d = Y^d = Z^d = I") {
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        const CMatrix eye = CMatrix::Identity(d, d);
        CHECK(max_abs_diff(mpow(pauli_x(dim).entries(), d), eye) < 1e-9);
        CHECK(max_abs_diff(mpow(pauli_y(dim).entries(), d), eye) < 1e-9);
        CHECK(max_abs_diff(mpow(pauli_z(dim).entries(), d), eye) < 1e-9);
    }
}

TEST_CASE("Y = -omega^{-1/2} X Z") {
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        const CMatrix expect = -dim.tau(-1) * (pauli_x(dim).entries() * pauli_z(dim).entries());
        CHECK(max_abs_diff(pauli_y(dim).entries(), expect) < 1e-12);
    }
}

TEST_CASE("clock-shift commutation Z X = omega X Z") {
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        const CMatrix zx = pauli_z(dim).entries() * pauli_x(dim).entries();
        const CMatrix xz = pauli_x(dim).entries() * pauli_z(dim).entries();
        CHECK(max_abs_diff(zx, dim.omega(1) * xz) < 1e-12);
    }
}

TEST_CASE("every constructor is unitary across dimensions") {
    for (int d : {2, 3, 4, 5, 7}) {
        Dimension dim(d);
        for (const auto& u : {pauli_x(dim), pauli_y(dim), pauli_z(dim), hadamard(dim),
                              phase_s(dim), u_gate(dim, 1 % d, (d - 1) % d)}) {
            const CMatrix gram = u.entries().adjoint() * u.entries();
            CHECK(max_abs_diff(gram, CMatrix::Identity(d, d)) < 1e-9);
        }
        const CMatrix cg = cx(dim).entries().adjoint() * cx(dim).entries();
        CHECK(max_abs_diff(cg, CMatrix::Identity(d * d, d * d)) < 1e-9);
    }
}

TEST_CASE("hadamard at d=2 and the uniform column") {
    Dimension d2(2);
    CMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    CHECK(max_abs_diff(hadamard(d2).entries(), h) < 1e-12);

    for (int d : {2, 3, 5, 7}) {
        Dimension dim(d);
        const int t0[1] = {0};
        auto out = apply_unitary(StateVector::basis1(dim, 0), hadamard(dim), t0);
        const double w = 1.0 / std::sqrt(static_cast<double>(d));
        for (int k = 0; k < d; ++k) CHECK(std::abs(out.amplitudes()[k] - Cx{w, 0}) < 1e-12);
    }
}

TEST_CASE("phase gate at d=2 is diag(1, i) and conjugates X into XZ") {
    Dimension d2(2);
    CMatrix s(2, 2);
    s << 1, 0, 0, Cx{0, 1};
    CHECK(max_abs_diff(phase_s(d2).entries(), s) < 1e-12);

    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        const CMatrix lhs = phase_s(dim).entries() * pauli_x(dim).entries() *
                            phase_s(dim).entries().adjoint();
        const CMatrix xz = pauli_x(dim).entries() * pauli_z(dim).entries();
        // S X S^dag = tau^{3-d} X Z
        CHECK(max_abs_diff(lhs, dim.tau(3 - d) * xz) < 1e-12);
    }
}

TEST_CASE("t_gate degenerate cases and the d <= 3 rejection") {
    Dimension d5(5);
    CHECK(max_abs_diff(t_gate(TGateSpec(d5, {0, 0, 0, 0, 0})).entries(),
                       CMatrix::Identity(5, 5)) < 1e-12);
    CHECK(max_abs_diff(t_gate(TGateSpec(d5, {0, 1, 2, 3, 4})).entries(),
                       pauli_z(d5).entries()) < 1e-12);
    CHECK(max_abs_diff(t_gate(TGateSpec(d5, {1, 1, 1, 1, 1})).entries(),
                       d5.omega(1) * CMatrix::Identity(5, 5)) < 1e-12);
    CHECK_THROWS_AS(t_gate(TGateSpec(Dimension(3), {0, 1, 2})), UnsupportedDimensionError);
    CHECK_THROWS_AS(t_gate(TGateSpec(Dimension(2), {0, 1})), UnsupportedDimensionError);
    CHECK_THROWS_AS(TGateSpec(d5, {0, 1}), DimensionMismatchError);
}

TEST_CASE("cx shifts the target by the control value") {
    Dimension d2(2), d3(3);
    const int both[2] = {0, 1};
    auto s = apply_unitary(StateVector::basis(d2, std::array{1, 0}), cx(d2), both);
    CHECK(max_abs_diff(s.amplitudes(), StateVector::basis(d2, std::array{1, 1}).amplitudes()) <
          1e-12);
    auto t = apply_unitary(StateVector::basis(d3, std::array{2, 1}), cx(d3), both);
    CHECK(max_abs_diff(t.amplitudes(), StateVector::basis(d3, std::array{2, 0}).amplitudes()) <
          1e-12);
}

TEST_CASE("u_gate special cases") {
    Dimension d2(2), d3(3);
    CHECK(max_abs_diff(u_gate(d2, 0, 1).entries(), pauli_x(d2).entries()) < 1e-12);
    CHECK(max_abs_diff(u_gate(d2, 1, 0).entries(), pauli_z(d2).entries()) < 1e-12);
    const int t0[1] = {0};
    auto out = apply_unitary(StateVector::basis1(d3, 1), u_gate(d3, 2, 1), t0);
    CHECK(max_abs_diff(out.amplitudes(), StateVector::basis1(d3, 0).amplitudes()) < 1e-12);
}

TEST_CASE("u_gate equals Z^{m1} (X^dag)^{m2} exactly; the swapped order picks up omega^{m1 m2}") {
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        const CMatrix xd = pauli_x(dim).entries().adjoint();
        const CMatrix z = pauli_z(dim).entries();
        for (int m1 = 0; m1 < d; ++m1) {
            for (int m2 = 0; m2 < d; ++m2) {
                const CMatrix u = u_gate(dim, m1, m2).entries();
                CHECK(max_abs_diff(u, mpow(z, m1) * mpow(xd, m2)) < 1e-12);
                CHECK(max_abs_diff(mpow(xd, m2) * mpow(z, m1),
                                   dim.omega(static_cast<long long>(m1) * m2) * u) < 1e-12);
            }
        }
    }
}

TEST_CASE("bell states form an orthonormal basis") {
    Dimension d2(2), d3(3);
    auto b00 = bell_state(d2, 0, 0);
    const double s = 1.0 / std::sqrt(2.0);
    CVector expect(4);
    expect << Cx{s, 0}, Cx{0, 0}, Cx{0, 0}, Cx{s, 0};
    CHECK(max_abs_diff(b00.amplitudes(), expect) < 1e-12);

    // All 81 inner products at d=3.
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 3; ++c) {
                for (int e = 0; e < 3; ++e) {
                    const Cx ip = bell_state(d3, a, b).inner(bell_state(d3, c, e));
                    const double expect_ip = (a == c && b == e) ? 1.0 : 0.0;
                    CHECK(std::abs(ip - Cx{expect_ip, 0}) < 1e-12);
                }
            }
        }
    }

    const double w3 = 1.0 / std::sqrt(3.0);
    auto b3 = bell_state(d3, 0, 0);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(b3.amplitudes()[j * 3 + j] - Cx{w3, 0}) < 1e-12);
}

TEST_CASE("gate_matrix covers the allowed set") {
    Dimension d5(5);
    CHECK(gate_matrix(GateId::x(), d5).n_qudits() == 1);
    CHECK(gate_matrix(GateId::controlled_x(), d5).n_qudits() == 2);
    CHECK(gate_matrix(GateId::t(TGateSpec(d5, {0, 1, 2, 3, 4})), d5).n_qudits() == 1);
    CHECK(GateId::s().name() == "S");
    CHECK_THROWS_AS(gate_matrix(GateId{GateId::Tag::T, std::nullopt}, d5), InvalidGateError);
}

TEST_CASE("pad_xz builds X^p Z^q in one pass") {
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        for (int p = 0; p < d; ++p) {
            for (int q = 0; q < d; ++q) {
                const CMatrix expect =
                    mpow(pauli_x(dim).entries(), p) * mpow(pauli_z(dim).entries(), q);
                CHECK(max_abs_diff(pad_xz(dim, p, q).entries(), expect) < 1e-12);
            }
        }
    }
}
