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
#include "qnc/pauli_frame.hpp"

#include "qnc/errors.hpp"

namespace qnc {

namespace {

CMatrix matpow(const CMatrix& m, int k) {
    CMatrix r = CMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

// Integer phase function of the S gate: S|j> = tau^{f(j)}|j>, f(x) = x(x-d+2).
long long s_phase_f(int d, int x) {
    const int xr = ((x % d) + d) % d;
    return static_cast<long long>(xr) * (xr - d + 2);
}

} // namespace

PauliKey update_key(const GateId& gate, Dimension dim, PauliKey key,
                    std::optional<TGadgetRandomness> gadget) {
    if (gadget && gate.tag != GateId::Tag::T) {
        throw MissingGadgetError("gadget randomness is only for T");
    }
    switch (gate.tag) {
        case GateId::Tag::X:
        case GateId::Tag::Y:
        case GateId::Tag::Z:
            return key;
        case GateId::Tag::H:
            return PauliKey{dim.mod(-key.q), key.p};
        case GateId::Tag::S:
            return PauliKey{key.p, dim.mod(key.p + key.q)};
        case GateId::Tag::T: {
            if (!gadget) throw MissingGadgetError("T update needs the gadget randomness (r, r')");
            if (!gate.t_spec) throw InvalidGateError("T gate id without a t-vector");
            const auto gamma = gadget_gamma(*gate.t_spec);
            if (!gamma) {
                throw InvalidGateError("t-vector is gadget-incompatible: no decryption key update exists");
            }
            const long long p = key.p;
            return PauliKey{dim.mod(p + gadget->r),
                            dim.mod(key.q + p * (p + 1) / 2 + static_cast<long long>(*gamma) * p +
                                    gadget->r_prime)};
        }
        case GateId::Tag::CX:
            throw InvalidGateError("use update_key_cx for the two-qudit gate");
    }
    throw InvalidGateError("unknown gate tag");
}

CXKeyPair update_key_cx(Dimension dim, CXKeyPair keys) {
    const int p = keys.control.p, q = keys.control.q;
    const int s = keys.target.p, t = keys.target.q;
    return CXKeyPair{PauliKey{dim.mod(p - s), q}, PauliKey{s, dim.mod(q + t)}};
}

CXKeyPair update_key_cx_xz(Dimension dim, CXKeyPair keys) {
    const int p = keys.control.p, q = keys.control.q;
    const int s = keys.target.p, t = keys.target.q;
    return CXKeyPair{PauliKey{p, dim.mod(q - t)}, PauliKey{dim.mod(p + s), t}};
}

PauliKey nominal_update(const GateId& gate, Dimension dim, PauliKey key,
                        std::optional<TGadgetRandomness> gadget) {
    switch (gate.tag) {
        case GateId::Tag::X:
        case GateId::Tag::Y:
        case GateId::Tag::Z:
            return key;
        case GateId::Tag::H:
            return PauliKey{key.q, key.p};
        case GateId::Tag::S:
            return PauliKey{key.p, dim.mod(key.p + key.q)};
        case GateId::Tag::T: {
            if (!gadget) throw MissingGadgetError("T update needs the gadget randomness (r, r')");
            return PauliKey{dim.mod(key.p + gadget->r), dim.mod(key.p + key.q + gadget->r_prime)};
        }
        case GateId::Tag::CX:
            throw InvalidGateError("use nominal_update_cx for the two-qudit gate");
    }
    throw InvalidGateError("unknown gate tag");
}

CXKeyPair nominal_update_cx(Dimension dim, CXKeyPair keys) {
    const int p = keys.control.p, q = keys.control.q;
    const int s = keys.target.p, t = keys.target.q;
    return CXKeyPair{PauliKey{dim.mod(p + s), q}, PauliKey{s, dim.mod(q + t)}};
}

CXKeyPair nominal_update_cx_xz(Dimension dim, CXKeyPair keys) {
    const int p = keys.control.p, q = keys.control.q;
    const int s = keys.target.p, t = keys.target.q;
    return CXKeyPair{PauliKey{p, dim.mod(q + t)}, PauliKey{dim.mod(p + s), t}};
}

std::optional<int> gadget_gamma(const TGateSpec& spec) {
    const int d = spec.dim.value();
    // g_j = 2(t_{j+1} - t_j) + f(j+1) - 2j mod 2d must be affine in j with an
    // even slope; the halved slope is the Z-excess gamma in the update rule.
    std::vector<int> g(d);
    for (int j = 0; j < d; ++j) {
        const long long diff =
            2LL * (spec.t[(j + 1) % d] - spec.t[j]) + s_phase_f(d, j + 1) - 2LL * j;
        g[j] = spec.dim.mod2d(diff);
    }
    const int slope = spec.dim.mod2d(g[1] - g[0]);
    if (slope % 2 != 0) return std::nullopt;
    for (int j = 1; j + 1 < d; ++j) {
        if (spec.dim.mod2d(g[j + 1] - g[j]) != slope) return std::nullopt;
    }
    return spec.dim.mod(slope / 2);
}

TGateSpec compatible_t_vector(Dimension dim, int first, int a, int b) {
    const int d = dim.value();
    if (d <= 3 || d % 2 == 0) {
        throw UnsupportedDimensionError("gadget-compatible t-vectors require odd d > 3");
    }
    std::vector<int> t(d);
    t[0] = dim.mod(first);
    for (int j = 0; j + 1 < d; ++j) {
        const long long f = s_phase_f(d, j + 1); // even for odd d
        t[j + 1] = dim.mod(t[j] + j - f / 2 + a + static_cast<long long>(b) * j);
    }
    return TGateSpec(dim, std::move(t));
}

namespace {

CMatrix pad_matrix(Dimension dim, PauliKey key) { return pad_xz(dim, key.p, key.q).entries(); }

CMatrix unpad_matrix(Dimension dim, PauliKey key) {
    // Z^{-q} X^{-p} = (X^p Z^q)^dag
    return pad_xz(dim, key.p, key.q).entries().adjoint();
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
    CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return out;
}

CMatrix eval_operator(const GateId& gate, Dimension dim, PauliKey key,
                      const std::optional<TGadgetRandomness>& gadget) {
    if (gate.tag == GateId::Tag::T) {
        if (!gadget) throw MissingGadgetError("T evaluation needs the gadget randomness");
        return pad_matrix(dim, PauliKey{gadget->r, gadget->r_prime}) *
               matpow(phase_s(dim).entries(), key.p) * gate_matrix(gate, dim).entries();
    }
    return gate_matrix(gate, dim).entries();
}

CMatrix random_density(Dimension dim, int n_qudits, SeededRng& rng) {
    const std::int64_t n = pow_ll(dim.value(), n_qudits);
    CMatrix a(n, n);
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            a(i, j) = Cx{rng.uniform_double() - 0.5, rng.uniform_double() - 0.5};
        }
    }
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

bool end_to_end_ok(const GateId& gate, Dimension dim, PauliKey key,
                   const std::optional<TGadgetRandomness>& gadget, PauliKey updated,
                   const CMatrix& sigma, double tol) {
    const CMatrix pipeline =
        unpad_matrix(dim, updated) * eval_operator(gate, dim, key, gadget) * pad_matrix(dim, key);
    const CMatrix got = pipeline * sigma * pipeline.adjoint();
    const CMatrix g = gate_matrix(gate, dim).entries();
    return (got - g * sigma * g.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool end_to_end_cx_ok(Dimension dim, CXKeyPair keys, CXKeyPair updated, const CMatrix& sigma,
                      double tol) {
    const CMatrix enc = kron(pad_matrix(dim, keys.control), pad_matrix(dim, keys.target));
    const CMatrix dec = kron(unpad_matrix(dim, updated.control), unpad_matrix(dim, updated.target));
    const CMatrix c = cx(dim).entries();
    const CMatrix pipeline = dec * c * enc;
    const CMatrix got = pipeline * sigma * pipeline.adjoint();
    return (got - c * sigma * c.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

} // namespace

ConjugationSides conjugation_identity(const GateId& gate, Dimension dim, PauliKey key,
                                      std::optional<TGadgetRandomness> gadget) {
    if (gate.tag == GateId::Tag::CX) {
        throw InvalidGateError("use conjugation_identity_cx for the two-qudit gate");
    }
    CMatrix lhs = eval_operator(gate, dim, key, gadget) * pad_matrix(dim, key);
    PauliKey upd = nominal_update(gate, dim, key, gadget);
    CMatrix rhs = pad_matrix(dim, upd) * gate_matrix(gate, dim).entries();
    return ConjugationSides{std::move(lhs), std::move(rhs)};
}

ConjugationSides conjugation_identity_cx(Dimension dim, CXKeyPair keys) {
    const CMatrix c = cx(dim).entries();
    CMatrix lhs = c * kron(pad_matrix(dim, keys.control), pad_matrix(dim, keys.target));
    // Commonly quoted line: control -> (p, q+t), target -> (p+s, t).
    const CXKeyPair upd{PauliKey{keys.control.p, dim.mod(keys.control.q + keys.target.q)},
                        PauliKey{dim.mod(keys.control.p + keys.target.p), keys.target.q}};
    CMatrix rhs = kron(pad_matrix(dim, upd.control), pad_matrix(dim, upd.target)) * c;
    return ConjugationSides{std::move(lhs), std::move(rhs)};
}

std::optional<Cx> proportionality_factor(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
    const Cx tr = (b.adjoint() * a).trace();
    const double n = static_cast<double>(a.rows());
    if (std::abs(std::abs(tr) - n) > tol * n * 10) return std::nullopt;
    const Cx c = tr / n;
    if ((a - c * b).cwiseAbs().maxCoeff() > tol * 10) return std::nullopt;
    return c;
}

RuleReport validate_rule(const GateId& gate, Dimension dim) {
    const int d = dim.value();
    RuleReport report{gate, d, false, false, Cx{1.0, 0.0}, false, {}, std::nullopt, {}};
    SeededRng rng(0x9e3779b97f4a7c15ULL); // fixed oracle seed; reports are deterministic
    const double tol = kDefaultTol;

    if (gate.tag == GateId::Tag::CX) {
        report.certified_update = "control (p-s, q), target (s, q+t) [U form]; "
                                  "control (p, q-t), target (p+s, t) [XZ form]";
        bool exact = true, phase_ok = true, nominal_ok = true, certified_ok = true;
        for (int p = 0; p < d; ++p) {
            for (int q = 0; q < d; ++q) {
                for (int s = 0; s < d; ++s) {
                    for (int t = 0; t < d; ++t) {
                        const CXKeyPair key{{p, q}, {s, t}};
                        const auto sides = conjugation_identity_cx(dim, key);
                        const auto c = proportionality_factor(sides.lhs, sides.rhs, tol);
                        if (!c) phase_ok = false;
                        if (!c || std::abs(*c - Cx{1.0, 0.0}) > tol * 10) exact = false;
                        const CMatrix sigma = random_density(dim, 2, rng);
                        if (!end_to_end_cx_ok(dim, key, nominal_update_cx_xz(dim, key), sigma, tol))
                            nominal_ok = false;
                        if (!end_to_end_cx_ok(dim, key, update_key_cx_xz(dim, key), sigma, tol))
                            certified_ok = false;
                    }
                }
            }
        }
        report.holds_exactly = exact;
        report.holds_up_to_phase = phase_ok;
        report.nominal_update_correct = nominal_ok;
        {
            // Representative residual from the certified (exact) line.
            const CXKeyPair rep{{1 % d, 1 % d}, {1 % d, 1 % d}};
            const CXKeyPair upd = update_key_cx_xz(dim, rep);
            const CMatrix c = cx(dim).entries();
            const CMatrix lhs = c * kron(pad_matrix(dim, rep.control), pad_matrix(dim, rep.target));
            const CMatrix rhs = kron(pad_matrix(dim, upd.control), pad_matrix(dim, upd.target)) * c;
            report.residual_phase = proportionality_factor(lhs, rhs, tol).value_or(Cx{0.0, 0.0});
        }
        if (!nominal_ok) {
            if (certified_ok) {
                report.corrected_update = report.certified_update;
            } else {
                report.note = "no valid update found";
            }
        }
        return report;
    }

    // Single-qudit gates.
    const bool is_t = gate.tag == GateId::Tag::T;
    if (is_t && !gate.t_spec) throw InvalidGateError("T gate id without a t-vector");
    std::optional<int> gamma;
    if (is_t) gamma = gadget_gamma(*gate.t_spec);
    switch (gate.tag) {
        case GateId::Tag::X:
        case GateId::Tag::Y:
        case GateId::Tag::Z: report.certified_update = "(p', q') = (p, q)"; break;
        case GateId::Tag::H: report.certified_update = "(p', q') = (-q, p)"; break;
        case GateId::Tag::S: report.certified_update = "(p', q') = (p, p+q)"; break;
        case GateId::Tag::T:
            if (gamma) {
                report.certified_update = "(p', q') = (p+r, q + p(p+1)/2 + " +
                                          std::to_string(*gamma) + "*p + r')";
            }
            break;
        default: break;
    }

    std::vector<std::optional<TGadgetRandomness>> gadgets;
    if (is_t) {
        for (int r = 0; r < d; ++r) {
            for (int rp = 0; rp < d; ++rp) gadgets.emplace_back(TGadgetRandomness{r, rp});
        }
    } else {
        gadgets.emplace_back(std::nullopt);
    }

    bool exact = true, phase_ok = true, nominal_ok = true, certified_ok = true;
    for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
            const PauliKey key{p, q};
            for (const auto& gdt : gadgets) {
                const auto sides = conjugation_identity(gate, dim, key, gdt);
                const auto c = proportionality_factor(sides.lhs, sides.rhs, tol);
                if (!c) phase_ok = false;
                if (!c || std::abs(*c - Cx{1.0, 0.0}) > tol * 10) exact = false;
                const CMatrix sigma = random_density(dim, 1, rng);
                if (!end_to_end_ok(gate, dim, key, gdt, nominal_update(gate, dim, key, gdt), sigma,
                                   tol)) {
                    nominal_ok = false;
                }
                if (is_t && !gamma) {
                    certified_ok = false;
                } else if (!end_to_end_ok(gate, dim, key, gdt, update_key(gate, dim, key, gdt),
                                          sigma, tol)) {
                    certified_ok = false;
                }
            }
        }
    }
    report.holds_exactly = exact;
    report.holds_up_to_phase = phase_ok;
    report.nominal_update_correct = nominal_ok;

    if (!is_t || gamma) {
        // Residual at the representative key (1,1) from the certified line.
        const PauliKey rep{1 % d, 1 % d};
        std::optional<TGadgetRandomness> gdt;
        if (is_t) gdt = TGadgetRandomness{0, 0};
        const CMatrix lhs = eval_operator(gate, dim, rep, gdt) * pad_matrix(dim, rep);
        const CMatrix rhs =
            pad_matrix(dim, update_key(gate, dim, rep, gdt)) * gate_matrix(gate, dim).entries();
        report.residual_phase = proportionality_factor(lhs, rhs, tol).value_or(Cx{0.0, 0.0});
    }

    if (!nominal_ok) {
        if (certified_ok) {
            report.corrected_update = report.certified_update;
            // Independent cross-check: search all d^2 candidates at one key.
            const PauliKey key{1 % d, 1 % d};
            std::optional<TGadgetRandomness> gdt;
            if (is_t) gdt = TGadgetRandomness{0, 0};
            const CMatrix sigma = random_density(dim, 1, rng);
            const PauliKey expect = update_key(gate, dim, key, gdt);
            for (int pp = 0; pp < d; ++pp) {
                for (int qq = 0; qq < d; ++qq) {
                    const PauliKey cand{pp, qq};
                    if (end_to_end_ok(gate, dim, key, gdt, cand, sigma, tol) && !(cand == expect)) {
                        report.note = "candidate search found a second working update";
                    }
                }
            }
        } else {
            report.corrected_update = std::nullopt;
            report.note = is_t && !gamma
                              ? "no decryption key exists for this t-vector (gadget-incompatible)"
                              : "no valid update found";
        }
    }
    return report;
}

} // namespace qnc
