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

#include <variant>

#include "qnc/pauli_frame.hpp"

namespace qnc {

// Quantum one-time-pad homomorphic encryption: KeyGen / Enc / Eval / Dec.
// Evaluation of any gate in F = {X, Y, Z, H, S, T_t, CX} on a padded state
// commutes with the pad up to the classical key update in pauli_frame; the
// decryptor applies the updated key to recover G sigma G^dag.

/// Pad convention. Two interchangeable forms of the same pad:
///   XZPad: conjugation by X^p Z^q
///   UPad:  conjugation by U(p, q) = sum_j omega^{j p} |j><j+q|
/// They are related by U(m1, m2) == Z^{m1} (X^dag)^{m2}, i.e. a UPad with
/// key (m1, m2) equals an XZPad with key (-m2, m1) up to a global phase.
enum class PadConvention { XZPad, UPad };

/// The one documented translation between the two conventions.
PauliKey xz_key_from_u(Dimension dim, PauliKey u_key); // (m1,m2) -> (-m2, m1)
PauliKey u_key_from_xz(Dimension dim, PauliKey xz_key); // (p,q)  -> (q, -p)

/// Encryption/decryption key. `id` is the opaque lineage tag ciphertexts
/// carry instead of key material.
struct QfheKey {
    Dimension dim;
    std::uint64_t id;
    std::variant<PauliKey, CXKeyPair> material;

    int arity() const { return std::holds_alternative<PauliKey>(material) ? 1 : 2; }
    const PauliKey& single() const { return std::get<PauliKey>(material); }
    const CXKeyPair& pair() const { return std::get<CXKeyPair>(material); }

    /// Two single-qudit keys fused into the pair fed to a CX evaluation.
    static QfheKey combine(const QfheKey& control, const QfheKey& target);
};

/// Uniform key over Z_d^2 (arity 1) or Z_d^4 (arity 2), drawn from the
/// injected generator; deterministic given the seed.
QfheKey keygen(Dimension dim, int arity, SeededRng& rng);

/// Padded state. Carries no key material, only the opaque key id. Pure
/// payloads stay as state vectors (fast path); density payloads are used
/// when audits need them.
struct Ciphertext {
    Dimension dim;
    int n_qudits;
    std::uint64_t key_id;
    PadConvention convention;
    std::variant<StateVector, DensityMatrix> payload;

    DensityMatrix to_density() const;
};

Ciphertext encrypt(const QfheKey& key, const StateVector& plain,
                   PadConvention convention = PadConvention::XZPad);
Ciphertext encrypt(const QfheKey& key, const DensityMatrix& plain,
                   PadConvention convention = PadConvention::XZPad);

/// The T-gate evaluation operator X^r Z^{r'} S^p T_t consumes the pad
/// secret p by construction; whoever calls evaluate() for T must supply it
/// explicitly through this loudly named witness.
struct TGadgetWithPadSecret {
    TGadgetRandomness randomness;
    int pad_secret_p = 0; // the XZ-form p of the key that padded c1
};

/// Applies the evaluation operator for `gate`:
///   single-qudit G in {X,Y,Z,H,S}: payload -> G payload G^dag
///   T_t: payload -> (X^r Z^{r'} S^p T_t) payload (...)^dag
///   CX: joins c1 (control) and c2 (target) into one two-qudit ciphertext
///       (or takes a single two-qudit c1) and conjugates by CX.
/// Errors: missing/extra second ciphertext, missing gadget for T.
Ciphertext evaluate(const GateId& gate, const Ciphertext& c1,
                    const std::optional<Ciphertext>& c2 = std::nullopt,
                    const std::optional<TGadgetWithPadSecret>& t_gadget = std::nullopt);

/// Removes the pad with the (updated) key: conjugation by Z^{-q'} X^{-p'}
/// per qudit in XZ form, by U^dag(p', q') in U form. The key id must match
/// the ciphertext's lineage.
std::variant<StateVector, DensityMatrix> decrypt(const QfheKey& updated_key,
                                                 const Ciphertext& c);

StateVector decrypt_state(const QfheKey& updated_key, const Ciphertext& c);
DensityMatrix decrypt_density(const QfheKey& updated_key, const Ciphertext& c);

} // namespace qnc
