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
#include "qnc/qfhe.hpp"

#include "qnc/errors.hpp"

namespace qnc {

PauliKey xz_key_from_u(Dimension dim, PauliKey u_key) {
    // U(m1, m2) = Z^{m1} (X^dag)^{m2} = (global phase) X^{-m2} Z^{m1}
    return PauliKey{dim.mod(-u_key.q), u_key.p};
}

PauliKey u_key_from_xz(Dimension dim, PauliKey xz_key) {
    return PauliKey{xz_key.q, dim.mod(-xz_key.p)};
}

QfheKey QfheKey::combine(const QfheKey& control, const QfheKey& target) {
    if (control.dim != target.dim) throw DimensionMismatchError("combine: key dimensions differ");
    if (control.arity() != 1 || target.arity() != 1) {
        throw std::invalid_argument("combine takes two single-qudit keys");
    }
    // Order-sensitive mix of the two lineage tags; same recipe in evaluate().
    const std::uint64_t id = control.id ^ (target.id * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15u);
    return QfheKey{control.dim, id, CXKeyPair{control.single(), target.single()}};
}

QfheKey keygen(Dimension dim, int arity, SeededRng& rng) {
    if (arity != 1 && arity != 2) throw std::invalid_argument("keygen: arity must be 1 or 2");
    const int d = dim.value();
    const std::uint64_t id = rng.next_u64();
    if (arity == 1) {
        PauliKey k{rng.uniform_int(d), rng.uniform_int(d)};
        return QfheKey{dim, id, k};
    }
    CXKeyPair pair{{rng.uniform_int(d), rng.uniform_int(d)},
                   {rng.uniform_int(d), rng.uniform_int(d)}};
    return QfheKey{dim, id, pair};
}

namespace {

UnitaryMatrix pad_gate(Dimension dim, PauliKey key, PadConvention convention) {
    return convention == PadConvention::XZPad ? pad_xz(dim, key.p, key.q)
                                              : u_gate(dim, key.p, key.q);
}

StateVector apply1(const StateVector& s, const UnitaryMatrix& u, int target) {
    const int pos[1] = {target};
    return apply_unitary(s, u, pos);
}

DensityMatrix apply1(const DensityMatrix& s, const UnitaryMatrix& u, int target) {
    const int pos[1] = {target};
    return apply_unitary(s, u, pos);
}

template <typename Payload>
Payload pad_payload(Dimension dim, const Payload& plain, const QfheKey& key,
                    PadConvention convention, bool inverse) {
    Payload out = plain;
    const int n = plain.n_qudits();
    if (key.arity() == 1) {
        if (n != 1) throw std::invalid_argument("single-qudit key on multi-qudit plaintext");
        UnitaryMatrix u = pad_gate(dim, key.single(), convention);
        return apply1(out, inverse ? u.adjoint() : u, 0);
    }
    if (n != 2) throw std::invalid_argument("two-qudit key needs a two-qudit state");
    UnitaryMatrix uc = pad_gate(dim, key.pair().control, convention);
    UnitaryMatrix ut = pad_gate(dim, key.pair().target, convention);
    out = apply1(out, inverse ? uc.adjoint() : uc, 0);
    out = apply1(out, inverse ? ut.adjoint() : ut, 1);
    return out;
}

} // namespace

DensityMatrix Ciphertext::to_density() const {
    if (std::holds_alternative<DensityMatrix>(payload)) return std::get<DensityMatrix>(payload);
    return std::get<StateVector>(payload).to_density();
}

Ciphertext encrypt(const QfheKey& key, const StateVector& plain, PadConvention convention) {
    if (key.dim != plain.dim()) throw DimensionMismatchError("encrypt: dimension mismatch");
    if (key.arity() != plain.n_qudits()) {
        throw std::invalid_argument("encrypt: plaintext qudit count does not match key arity");
    }
    return Ciphertext{key.dim, plain.n_qudits(), key.id, convention,
                      pad_payload(key.dim, plain, key, convention, false)};
}

Ciphertext encrypt(const QfheKey& key, const DensityMatrix& plain, PadConvention convention) {
    if (key.dim != plain.dim()) throw DimensionMismatchError("encrypt: dimension mismatch");
    if (key.arity() != plain.n_qudits()) {
        throw std::invalid_argument("encrypt: plaintext qudit count does not match key arity");
    }
    return Ciphertext{key.dim, plain.n_qudits(), key.id, convention,
                      pad_payload(key.dim, plain, key, convention, false)};
}

namespace {

StateVector apply_full(const StateVector& s, const CMatrix& m) {
    return unchecked_state(s.dim(), s.n_qudits(), m * s.amplitudes());
}

DensityMatrix apply_full(const DensityMatrix& s, const CMatrix& m) {
    return DensityMatrix(s.dim(), m * s.entries() * m.adjoint());
}

CMatrix matpow(const CMatrix& m, int k) {
    CMatrix r = CMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

} // namespace

Ciphertext evaluate(const GateId& gate, const Ciphertext& c1, const std::optional<Ciphertext>& c2,
                    const std::optional<TGadgetWithPadSecret>& t_gadget) {
    const Dimension dim = c1.dim;
    if (gate.tag == GateId::Tag::CX) {
        if (t_gadget) throw std::invalid_argument("evaluate: T gadget supplied for CX");
        Ciphertext joint = c1;
        if (c2) {
            if (c1.n_qudits != 1 || c2->n_qudits != 1) {
                throw std::invalid_argument("evaluate(CX, c1, c2) takes two single-qudit ciphertexts");
            }
            if (c1.dim != c2->dim) throw DimensionMismatchError("evaluate: dimension mismatch");
            if (c1.convention != c2->convention) {
                throw std::invalid_argument("evaluate: mixed pad conventions");
            }
            const std::uint64_t id = c1.key_id == c2->key_id
                                         ? c1.key_id
                                         : (c1.key_id ^ (c2->key_id * 0x9e3779b97f4a7c15ULL +
                                                         0x7f4a7c15u));
            auto joint_payload = [&]() -> std::variant<StateVector, DensityMatrix> {
                if (std::holds_alternative<StateVector>(c1.payload) &&
                    std::holds_alternative<StateVector>(c2->payload)) {
                    return tensor(std::get<StateVector>(c1.payload),
                                  std::get<StateVector>(c2->payload));
                }
                return tensor(c1.to_density(), c2->to_density());
            };
            joint = Ciphertext{dim, 2, id, c1.convention, joint_payload()};
        } else if (c1.n_qudits != 2) {
            throw std::invalid_argument("evaluate(CX) needs a second ciphertext or a two-qudit one");
        }
        const CMatrix m = cx(dim).entries();
        if (std::holds_alternative<StateVector>(joint.payload)) {
            joint.payload = apply_full(std::get<StateVector>(joint.payload), m);
        } else {
            joint.payload = apply_full(std::get<DensityMatrix>(joint.payload), m);
        }
        return joint;
    }

    if (c2) throw std::invalid_argument("evaluate: second ciphertext is only for CX");
    if (c1.n_qudits != 1) throw std::invalid_argument("evaluate: single-qudit gate on multi-qudit ciphertext");
    if (gate.tag == GateId::Tag::T) {
        if (!t_gadget) throw MissingGadgetError("evaluate(T) needs the gadget and the pad secret p");
        const CMatrix op = pad_xz(dim, t_gadget->randomness.r, t_gadget->randomness.r_prime).entries() *
                           matpow(phase_s(dim).entries(), dim.mod(t_gadget->pad_secret_p)) *
                           gate_matrix(gate, dim).entries();
        Ciphertext out = c1;
        if (std::holds_alternative<StateVector>(out.payload)) {
            out.payload = apply_full(std::get<StateVector>(out.payload), op);
        } else {
            out.payload = apply_full(std::get<DensityMatrix>(out.payload), op);
        }
        return out;
    }
    if (t_gadget) throw std::invalid_argument("evaluate: gadget supplied for a non-T gate");
    const CMatrix m = gate_matrix(gate, dim).entries();
    Ciphertext out = c1;
    if (std::holds_alternative<StateVector>(out.payload)) {
        out.payload = apply_full(std::get<StateVector>(out.payload), m);
    } else {
        out.payload = apply_full(std::get<DensityMatrix>(out.payload), m);
    }
    return out;
}

std::variant<StateVector, DensityMatrix> decrypt(const QfheKey& updated_key, const Ciphertext& c) {
    if (updated_key.dim != c.dim) throw DimensionMismatchError("decrypt: dimension mismatch");
    if (updated_key.arity() != c.n_qudits) {
        throw std::invalid_argument("decrypt: key arity does not match ciphertext qudit count");
    }
    if (updated_key.id != c.key_id) {
        throw std::invalid_argument("decrypt: key lineage does not match this ciphertext");
    }
    if (std::holds_alternative<StateVector>(c.payload)) {
        return pad_payload(c.dim, std::get<StateVector>(c.payload), updated_key, c.convention, true);
    }
    return pad_payload(c.dim, std::get<DensityMatrix>(c.payload), updated_key, c.convention, true);
}

StateVector decrypt_state(const QfheKey& updated_key, const Ciphertext& c) {
    auto out = decrypt(updated_key, c);
    if (!std::holds_alternative<StateVector>(out)) {
        throw std::invalid_argument("decrypt_state: payload is a density matrix");
    }
    return std::get<StateVector>(out);
}

DensityMatrix decrypt_density(const QfheKey& updated_key, const Ciphertext& c) {
    auto out = decrypt(updated_key, c);
    if (std::holds_alternative<DensityMatrix>(out)) return std::get<DensityMatrix>(out);
    return std::get<StateVector>(out).to_density();
}

} // namespace qnc
