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

#include "qnc/gates.hpp"

namespace qnc {

// Key-update rulebook for conjugating gates past a Pauli one-time pad, plus
// the brute-force matrix oracle that certifies every rule before it is
// trusted. The commonly quoted additive updates ("nominal" below) are wrong
// for several gates once d > 2; the shipped rules are the oracle-certified
// ones:
//
//   gate | nominal update            | certified update
//   -----+---------------------------+---------------------------------------
//   X,Y,Z| (p, q)                    | (p, q)
//   H    | (q, p)                    | (-q, p)
//   S    | (p, p+q)                  | (p, p+q)
//   T_t  | (p+r, p+q+r')             | (p+r, q + p(p+1)/2 + gamma_t * p + r')
//   CX   | ctrl (p+s, q), tgt (s,q+t)| ctrl (p-s, q), tgt (s, q+t)   [U form]
//        | ctrl (p, q+t), tgt (p+s,t)| ctrl (p, q-t), tgt (p+s, t)   [XZ form]
//
// Exact operator identities behind the CX rules (scalar exactly 1):
//   CX (X^p Z^q  (x) X^s Z^t)  = (X^p Z^{q-t} (x) X^{p+s} Z^t) CX
//   CX (U(p,q)   (x) U(s,t))   = (U(p-s, q)   (x) U(s, q+t))   CX
//
// The T gadget evaluates X^r Z^{r'} S^p T_t on the padded state. S^p turns
// X^p into X^p Z^{p(p+1)/2 + gamma p} up to phase only when the phase
// increments of T_t are quadratic in j with the matching leading
// coefficient; exactly d^3 of the d^d possible t-vectors qualify
// (see gadget_gamma), and no t-vector makes the nominal (p+r, p+q+r')
// update work once p >= 2.

/// One-time-pad key (p, q), both in [0, d).
struct PauliKey {
    int p = 0;
    int q = 0;
    friend bool operator==(const PauliKey&, const PauliKey&) = default;
};

/// Keys for the two qudits entering a CX evaluation.
struct CXKeyPair {
    PauliKey control;
    PauliKey target;
    friend bool operator==(const CXKeyPair&, const CXKeyPair&) = default;
};

/// Refresh randomness (r, r') consumed by the T-gate gadget.
struct TGadgetRandomness {
    int r = 0;
    int r_prime = 0;
};

/// Certified decryption-key update for a single-qudit gate, keys in X^p Z^q
/// form. T requires the gadget randomness (MissingGadgetError otherwise) and
/// a gadget-compatible t-vector (InvalidGateError otherwise).
PauliKey update_key(const GateId& gate, Dimension dim, PauliKey key,
                    std::optional<TGadgetRandomness> gadget = std::nullopt);

/// Certified CX update with both keys in U(m1,m2) form:
/// control (p-s, q), target (s, q+t).
CXKeyPair update_key_cx(Dimension dim, CXKeyPair keys);

/// Certified CX update with both keys in X^p Z^q form:
/// control (p, q-t), target (p+s, t).
CXKeyPair update_key_cx_xz(Dimension dim, CXKeyPair keys);

/// The commonly quoted (uncorrected) update; what validate_rule tests first.
PauliKey nominal_update(const GateId& gate, Dimension dim, PauliKey key,
                        std::optional<TGadgetRandomness> gadget = std::nullopt);
CXKeyPair nominal_update_cx(Dimension dim, CXKeyPair keys);    // U form
CXKeyPair nominal_update_cx_xz(Dimension dim, CXKeyPair keys); // X^p Z^q form

/// Gadget compatibility of a t-vector. Returns gamma with
/// 2(t_{j+1} - t_j) + f(j+1) - 2j  ==  2*gamma*j + const (mod 2d),
/// f(x) = x(x - d + 2); nullopt when the increments are not of that form
/// (then no decryption key can repair a gadget evaluation).
std::optional<int> gadget_gamma(const TGateSpec& spec);

/// Member of the gadget-compatible family: t_0 = first, increments
/// t_{j+1} - t_j = j - f(j+1)/2 + a + b*j (mod d). Sweeping
/// (first, a, b) enumerates all d^3 compatible vectors.
TGateSpec compatible_t_vector(Dimension dim, int first, int a, int b);

/// Both sides of the pad-commutation line for one key, built with the
/// nominal update: lhs = G * pad, rhs = pad' * G (for CX, pads are two-qudit
/// XZ pads). The oracle compares these up to a global scalar.
struct ConjugationSides {
    CMatrix lhs;
    CMatrix rhs;
};
ConjugationSides conjugation_identity(const GateId& gate, Dimension dim, PauliKey key,
                                      std::optional<TGadgetRandomness> gadget = std::nullopt);
ConjugationSides conjugation_identity_cx(Dimension dim, CXKeyPair keys);

/// Scalar c with A = c * B (|c| = 1 within tol), or nullopt if A is not
/// proportional to B.
std::optional<Cx> proportionality_factor(const CMatrix& a, const CMatrix& b,
                                         double tol = kDefaultTol);

/// Verdict of the exhaustive oracle for one gate at one dimension.
struct RuleReport {
    GateId gate;
    int d;
    /// Nominal operator line holds with scalar exactly 1 for every key.
    bool holds_exactly = false;
    /// Nominal operator line holds up to a unit scalar for every key.
    bool holds_up_to_phase = false;
    /// lhs/rhs scalar at a representative key (p=q=1; for CX all four 1).
    Cx residual_phase{1.0, 0.0};
    /// Nominal decryption key passes the end-to-end density check.
    bool nominal_update_correct = false;
    /// Formula of the rule actually shipped.
    std::string certified_update;
    /// Set iff the nominal update fails end-to-end: the certified formula,
    /// cross-checked against a per-key candidate search. Empty optional with
    /// `note` set means no update exists at all (only incompatible T_t).
    std::optional<std::string> corrected_update;
    std::string note;
};

/// Exhaustive validation of one gate's rule: every key (and for T every
/// gadget value and a sample of t-vectors), operator comparison up to global
/// phase, plus the independent end-to-end check
/// Dec(update(key), Eval(G, Enc(key, sigma))) == G sigma G^dag on random
/// sigma. Failures are reported, never thrown.
RuleReport validate_rule(const GateId& gate, Dimension dim);

} // namespace qnc
