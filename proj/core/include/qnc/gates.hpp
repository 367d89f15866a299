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

#include <optional>
#include <string>
#include <vector>

#include "qnc/state.hpp"

namespace qnc {

// Generalized Pauli / Clifford constructors over C^d:
//   X |j> = |j+1>                    (shift)
//   Z |j> = omega^j |j>              (clock)
//   Y     = -omega^{-1/2} X Z        (half-integer power realized via tau)
//   H[k][j] = omega^{jk} / sqrt(d)
//   S |j> = tau^{(j-d+2) j} |j>
//   CX |a,b> = |a, a+b>
// plus the diagonal non-Clifford family T_t and the teleportation-correction
// operator U(m1,m2) = sum_j omega^{j m1} |j><j+m2|.

UnitaryMatrix pauli_x(Dimension dim);
UnitaryMatrix pauli_y(Dimension dim);
UnitaryMatrix pauli_z(Dimension dim);
UnitaryMatrix hadamard(Dimension dim);
UnitaryMatrix phase_s(Dimension dim);
UnitaryMatrix cx(Dimension dim);

/// Parameters of the diagonal gate T_t = diag(omega^{t_0}, ..., omega^{t_{d-1}}).
/// Entries are reduced mod d.
struct TGateSpec {
    TGateSpec(Dimension dim, std::vector<int> t);

    Dimension dim;
    std::vector<int> t; // length d, values in [0, d)
};

/// Defined for d > 3 only; throws UnsupportedDimensionError for d <= 3.
UnitaryMatrix t_gate(const TGateSpec& spec);

/// U(m1,m2) = sum_j omega^{j m1} |j><j+m2|. Satisfies, as exact matrix
/// identities, U(m1,m2) = Z^{m1} (X^dag)^{m2} and
/// (X^dag)^{m2} Z^{m1} = omega^{m1 m2} U(m1,m2).
UnitaryMatrix u_gate(Dimension dim, int m1, int m2);

/// |psi(m1,m2)> = (1/sqrt d) sum_j omega^{j m1} |j, j+m2>; the d^2 of these
/// form an orthonormal basis.
StateVector bell_state(Dimension dim, int m1, int m2);

/// Identifies a gate from the allowed set F = {X, Y, Z, H, S, T_t, CX}.
struct GateId {
    enum class Tag { X, Y, Z, H, S, T, CX };

    Tag tag;
    std::optional<TGateSpec> t_spec; // present iff tag == T

    static GateId x() { return {Tag::X, std::nullopt}; }
    static GateId y() { return {Tag::Y, std::nullopt}; }
    static GateId z() { return {Tag::Z, std::nullopt}; }
    static GateId h() { return {Tag::H, std::nullopt}; }
    static GateId s() { return {Tag::S, std::nullopt}; }
    static GateId t(TGateSpec spec) { return {Tag::T, std::move(spec)}; }
    static GateId controlled_x() { return {Tag::CX, std::nullopt}; }

    bool is_two_qudit() const { return tag == Tag::CX; }
    std::string name() const;
};

/// Matrix of the identified gate at the given dimension.
UnitaryMatrix gate_matrix(const GateId& gate, Dimension dim);

/// X^p Z^q as a single d x d matrix (the one-time-pad operator).
UnitaryMatrix pad_xz(Dimension dim, int p, int q);

} // namespace qnc
