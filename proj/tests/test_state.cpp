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
#include "qnc/security.hpp"
#include "test_util.hpp"

using namespace qnc;
using namespace qnc::testutil;

namespace {
CVector vec(std::initializer_list<Cx> xs) {
    CVector v(static_cast<std::int64_t>(xs.size()));
    std::int64_t i = 0;
    for (Cx x : xs) v[i++] = x;
    return v;
}
} // namespace

TEST_CASE("make_state basis and normalization") {
    Dimension d2(2), d3(3);
    auto s = make_state(d2, vec({1, 0}));
    CHECK(s.n_qudits() == 1);
    CHECK(std::abs(s.amplitudes()[0] - Cx{1, 0}) < 1e-12);

    auto u = make_state(d3, vec({1, 1, 1}));
    const double w = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(u.amplitudes()[i] - Cx{w, 0}) < 1e-12);
}

TEST_CASE("make_state big-endian index layout by direct enumeration") {
    // (|000> + |001>)/sqrt(2): with the leftmost qudit most significant,
    // |000> -> 0*4+0*2+0 = 0 and |001> -> 1. Higher indices stay 0.
    Dimension d2(2);
    auto s = make_state(d2, vec({1, 1, 0, 0, 0, 0, 0, 0}));
    CHECK(s.n_qudits() == 3);
    const double w = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitudes()[0] - Cx{w, 0}) < 1e-12);
    CHECK(std::abs(s.amplitudes()[1] - Cx{w, 0}) < 1e-12);
    for (int i = 2; i < 8; ++i) CHECK(std::abs(s.amplitudes()[i]) < 1e-12);
    // digit extraction agrees with the layout
    CHECK(s.digit_of(1, 2) == 1);
    CHECK(s.digit_of(1, 0) == 0);
    CHECK(s.digit_of(4, 0) == 1);
}

TEST_CASE("make_state rejects bad input") {
    Dimension d2(2);
    CHECK_THROWS_AS(make_state(d2, vec({1, 0, 0})), DimensionMismatchError);
    CHECK_THROWS_AS(make_state(d2, vec({1})), DimensionMismatchError); // needs n >= 1
    CHECK_THROWS_AS(make_state(d2, vec({0, 0})), DegenerateInputError);
}

TEST_CASE("tensor of states and unitaries") {
    Dimension d2(2);
    auto t = tensor(StateVector::basis1(d2, 0), StateVector::basis1(d2, 1));
    CHECK(max_abs_diff(t.amplitudes(), vec({0, 1, 0, 0})) < 1e-12);

    // |phi> (x) |psi_00> with phi = (|0>+|1>)/sqrt(2): amplitude alpha_j/sqrt(2)
    // on |j k k>, enumerated directly.
    auto phi = make_state(d2, vec({1, 1}));
    auto joint = tensor(phi, bell_state(d2, 0, 0));
    CVector expect = CVector::Zero(8);
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) expect[j * 4 + k * 2 + k] = Cx{0.5, 0};
    }
    CHECK(max_abs_diff(joint.amplitudes(), expect) < 1e-12);

    Dimension d3(3);
    auto i1 = UnitaryMatrix(d3, 1, CMatrix::Identity(3, 3));
    auto i2 = tensor(i1, i1);
    CHECK(max_abs_diff(i2.entries(), CMatrix::Identity(9, 9)) < 1e-12);

    CHECK_THROWS_AS(tensor(StateVector::basis1(d2, 0), StateVector::basis1(d3, 0)),
                    DimensionMismatchError);
}

TEST_CASE("apply_unitary basics and embedding") {
    Dimension d2(2), d3(3);
    auto s00 = StateVector::basis(d2, std::array{0, 0});
    const int t0[1] = {0};
    auto s10 = apply_unitary(s00, pauli_x(d2), t0);
    CHECK(max_abs_diff(s10.amplitudes(), vec({0, 0, 1, 0})) < 1e-12);

    const int both[2] = {0, 1};
    auto s11 = apply_unitary(s10, cx(d2), both);
    CHECK(max_abs_diff(s11.amplitudes(), vec({0, 0, 0, 1})) < 1e-12);

    // U(2,1)|0> = omega|2> at d=3
    auto out = apply_unitary(StateVector::basis1(d3, 0), u_gate(d3, 2, 1), t0);
    CVector expect = CVector::Zero(3);
    expect[2] = d3.omega(1);
    CHECK(max_abs_diff(out.amplitudes(), expect) < 1e-12);

    CMatrix bad = CMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(UnitaryMatrix(d2, 1, bad), InvalidGateError);
}

TEST_CASE("apply_unitary preserves norm on random inputs") {
    SeededRng rng(7);
    for (int d : {2, 3, 5}) {
        Dimension dim(d);
        for (int n : {1, 2, 3}) {
            auto s = random_state(dim, n, rng);
            auto u = random_unitary(dim, 1, rng);
            const int t[1] = {n - 1};
            auto out = apply_unitary(s, u, t);
            CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("apply_unitary to middle target matches explicit kron") {
    // Embedding a 1-qudit gate at position 1 of 3 equals I (x) U (x) I.
    SeededRng rng(11);
    Dimension d3(3);
    auto s = random_state(d3, 3, rng);
    auto u = random_unitary(d3, 1, rng);
    auto eye = UnitaryMatrix(d3, 1, CMatrix::Identity(3, 3));
    const int t[1] = {1};
    auto got = apply_unitary(s, u, t);
    auto full = tensor(tensor(eye, u), eye);
    CVector expect = full.entries() * s.amplitudes();
    CHECK(max_abs_diff(got.amplitudes(), expect) < 1e-12);
}

TEST_CASE("partial_trace marginals") {
    Dimension d2(2), d3(3);
    const int keep0[1] = {0};

    auto bell_rho = bell_state(d2, 0, 0).to_density();
    auto marg = partial_trace(bell_rho, keep0);
    CHECK(max_abs_diff(marg.entries(), CMatrix::Identity(2, 2) / 2.0) < 1e-12);

    // Product state: tracing the other factor returns the kept one.
    auto prod = tensor(StateVector::basis1(d3, 0).to_density(),
                       StateVector::basis1(d3, 1).to_density());
    auto kept = partial_trace(prod, keep0);
    CHECK(max_abs_diff(kept.entries(), StateVector::basis1(d3, 0).to_density().entries()) < 1e-12);

    CHECK_THROWS_AS(partial_trace(prod, std::span<const int>{}), std::invalid_argument);
}

TEST_CASE("partial_trace of the padded carrier pair, averaged over the prepared dit") {
    // State U(2s1,s2)|m11> (x) U(s1,2s2)|m11+m21>: for fixed keys and m21,
    // tracing out the first qudit and averaging m11 uniformly gives I/d.
    Dimension d3(3);
    const int s1 = 2, s2 = 1, m21 = 1;
    CMatrix acc = CMatrix::Zero(3, 3);
    const int keep1[1] = {1};
    for (int m11 = 0; m11 < 3; ++m11) {
        const int t0[1] = {0};
        auto q7 = apply_unitary(StateVector::basis1(d3, m11), u_gate(d3, 2 * s1 % 3, s2), t0);
        auto q9 = apply_unitary(StateVector::basis1(d3, (m11 + m21) % 3),
                                u_gate(d3, s1, 2 * s2 % 3), t0);
        acc += partial_trace(tensor(q7, q9).to_density(), keep1).entries();
    }
    CHECK(max_abs_diff(acc / 3.0, CMatrix::Identity(3, 3) / 3.0) < 1e-9);
}

TEST_CASE("partial_trace inverts tensor for random density matrices") {
    SeededRng rng(3);
    for (int d : {2, 3}) {
        Dimension dim(d);
        auto a = random_density(dim, 1, rng);
        auto b = random_density(dim, 1, rng);
        const int keep0[1] = {0};
        const int keep1[1] = {1};
        auto joint = tensor(a, b);
        CHECK(max_abs_diff(partial_trace(joint, keep0).entries(), a.entries()) < 1e-9);
        CHECK(max_abs_diff(partial_trace(joint, keep1).entries(), b.entries()) < 1e-9);
    }
}

TEST_CASE("equal_up_to_global_phase") {
    Dimension d3(3);
    auto z = StateVector::basis1(d3, 0);
    auto phased = unchecked_state(d3, 1, z.amplitudes() * d3.omega(1));
    CHECK(equal_up_to_global_phase(z, phased));
    CHECK_FALSE(equal_up_to_global_phase(z, StateVector::basis1(d3, 1)));
    CHECK_THROWS_AS(equal_up_to_global_phase(z, bell_state(d3, 0, 0)), DimensionMismatchError);

    SeededRng rng(5);
    for (int i = 0; i < 10; ++i) {
        auto s = random_state(d3, 2, rng);
        const double theta = rng.uniform_double() * 6.28318530717958648;
        auto rotated = unchecked_state(d3, 2, s.amplitudes() * Cx{std::cos(theta), std::sin(theta)});
        CHECK(equal_up_to_global_phase(s, rotated));
    }
}

TEST_CASE("trace_distance properties") {
    Dimension d2(2);
    SeededRng rng(9);
    auto rho = random_density(d2, 1, rng);
    CHECK(trace_distance(rho, rho) < 1e-12);

    auto p0 = StateVector::basis1(d2, 0).to_density();
    auto p1 = StateVector::basis1(d2, 1).to_density();
    CHECK(std::abs(trace_distance(p0, p1) - 1.0) < 1e-12);

    for (int i = 0; i < 10; ++i) {
        auto a = random_density(d2, 2, rng);
        auto b = random_density(d2, 2, rng);
        auto c = random_density(d2, 2, rng);
        const double ab = trace_distance(a, b);
        CHECK(std::abs(ab - trace_distance(b, a)) < 1e-9);
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
        CHECK(ab >= -1e-12);
        CHECK(ab <= 1.0 + 1e-9);
    }
}

TEST_CASE("trace_distance of key-averaged pad from the mixed state is zero") {
    Dimension d3(3);
    SeededRng rng(21);
    auto sigma = random_density(d3, 1, rng);
    auto averaged = key_averaged_ciphertext(d3, sigma);
    CHECK(trace_distance(averaged, DensityMatrix::maximally_mixed(d3, 1)) < 1e-9);
}

TEST_CASE("measure_computational deterministic cases") {
    Dimension d3(3);
    SeededRng rng(1);
    auto r = measure_computational(StateVector::basis1(d3, 1), 0, rng);
    CHECK(r.outcome == 1);
    CHECK(r.probability == doctest::Approx(1.0));
    CHECK(max_abs_diff(r.collapsed.amplitudes(), StateVector::basis1(d3, 1).amplitudes()) < 1e-12);
}

TEST_CASE("measure_computational on a Bell pair collapses both qudits") {
    Dimension d2(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SeededRng rng(seed);
        auto r = measure_computational(bell_state(d2, 0, 0), 0, rng);
        CHECK(r.probability == doctest::Approx(0.5));
        auto expect = StateVector::basis(d2, std::array{r.outcome, r.outcome});
        CHECK(max_abs_diff(r.collapsed.amplitudes(), expect.amplitudes()) < 1e-12);
    }
}

TEST_CASE("measure_computational frequencies match Born probabilities within 3 sigma") {
    Dimension d3(3);
    // amplitudes with probabilities 1/6, 2/6, 3/6
    CVector v(3);
    v[0] = std::sqrt(1.0 / 6.0);
    v[1] = std::sqrt(2.0 / 6.0);
    v[2] = std::sqrt(3.0 / 6.0);
    auto s = make_state(d3, v);
    const int n = 10000;
    SeededRng rng(42);
    std::array<int, 3> counts{};
    for (int i = 0; i < n; ++i) counts[measure_computational(s, 0, rng).outcome]++;
    const double probs[3] = {1.0 / 6, 2.0 / 6, 3.0 / 6};
    for (int v3 = 0; v3 < 3; ++v3) {
        const double mean = n * probs[v3];
        const double sdev = std::sqrt(n * probs[v3] * (1 - probs[v3]));
        CHECK(std::abs(counts[v3] - mean) <= 3 * sdev);
    }
}

TEST_CASE("density matrix validation") {
    Dimension d2(2);
    CMatrix bad = CMatrix::Zero(2, 2);
    bad(0, 1) = Cx{1, 0}; // not Hermitian
    CHECK_THROWS_AS(DensityMatrix(d2, bad), DegenerateInputError);
    CMatrix traceless = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix(d2, traceless), DegenerateInputError); // trace 2
    CMatrix negative = CMatrix::Zero(2, 2);
    negative(0, 0) = Cx{1.5, 0};
    negative(1, 1) = Cx{-0.5, 0};
    CHECK_THROWS_AS(DensityMatrix(d2, negative), DegenerateInputError);
}

TEST_CASE("seeded rng is reproducible and unbiased enough") {
    SeededRng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    SeededRng r(5);
    for (int i = 0; i < 1000; ++i) {
        const int v = r.uniform_int(7);
        CHECK(v >= 0);
        CHECK(v < 7);
        const double x = r.uniform_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}
