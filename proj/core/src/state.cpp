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
#include "qnc/state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>

#include "qnc/errors.hpp"

namespace qnc {

namespace {

// Number of qudits n with d^n == size, or -1.
int qudits_for_size(int d, std::int64_t size) {
    int n = 0;
    std::int64_t v = 1;
    while (v < size) {
        v *= d;
        ++n;
    }
    return v == size && n >= 1 ? n : -1;
}

void require_same_dim(const Dimension& a, const Dimension& b, const char* what) {
    if (a != b) {
        throw DimensionMismatchError(std::string(what) + ": operands have different qudit dimensions");
    }
}

} // namespace

StateVector::StateVector(Dimension dim, CVector amplitudes)
    : dim_(dim), n_qudits_(0), amps_(std::move(amplitudes)) {
    n_qudits_ = qudits_for_size(dim_.value(), amps_.size());
    if (n_qudits_ < 1) {
        throw DimensionMismatchError("state length " + std::to_string(amps_.size()) +
                                     " is not d^n for d=" + std::to_string(dim_.value()));
    }
    const double norm = amps_.norm();
    if (norm < 1e-12) throw DegenerateInputError("state has zero norm");
    amps_ /= norm;
}

StateVector::StateVector(Dimension dim, int n, CVector amps, Unchecked)
    : dim_(dim), n_qudits_(n), amps_(std::move(amps)) {}

StateVector unchecked_state(Dimension dim, int n, CVector amps) {
    return StateVector(dim, n, std::move(amps), StateVector::Unchecked{});
}

StateVector StateVector::basis(Dimension dim, std::span<const int> digits) {
    const int d = dim.value();
    std::int64_t index = 0;
    for (int digit : digits) {
        if (digit < 0 || digit >= d) throw DegenerateInputError("basis digit out of range");
        index = index * d + digit;
    }
    CVector v = CVector::Zero(pow_ll(d, static_cast<int>(digits.size())));
    v[index] = Cx{1.0, 0.0};
    return StateVector(dim, std::move(v));
}

StateVector StateVector::basis1(Dimension dim, int value) {
    const int digits[1] = {value};
    return basis(dim, digits);
}

Cx StateVector::inner(const StateVector& other) const {
    if (dim_ != other.dim_ || n_qudits_ != other.n_qudits_) {
        throw DimensionMismatchError("inner: shape mismatch");
    }
    return amps_.dot(other.amps_); // Eigen's dot conjugates the left operand
}

DensityMatrix StateVector::to_density() const { return DensityMatrix::pure(*this); }

int StateVector::digit_of(std::int64_t index, int pos) const {
    const std::int64_t stride = pow_ll(dim_.value(), n_qudits_ - 1 - pos);
    return static_cast<int>((index / stride) % dim_.value());
}

DensityMatrix::DensityMatrix(Dimension dim, CMatrix entries)
    : dim_(dim), n_qudits_(0), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionMismatchError("density matrix must be square");
    }
    n_qudits_ = qudits_for_size(dim_.value(), entries_.rows());
    if (n_qudits_ < 1) {
        throw DimensionMismatchError("density matrix side is not d^n");
    }
    if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kDefaultTol) {
        throw DegenerateInputError("density matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - Cx{1.0, 0.0}) > kDefaultTol) {
        throw DegenerateInputError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDefaultTol) {
        throw DegenerateInputError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.dim(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Dimension dim, int n_qudits) {
    const std::int64_t n = pow_ll(dim.value(), n_qudits);
    return DensityMatrix(dim, CMatrix::Identity(n, n) / static_cast<double>(n));
}

UnitaryMatrix::UnitaryMatrix(Dimension dim, int n_qudits, CMatrix entries, double tol)
    : dim_(dim), n_qudits_(n_qudits), entries_(std::move(entries)) {
    const std::int64_t n = pow_ll(dim_.value(), n_qudits_);
    if (entries_.rows() != n || entries_.cols() != n) {
        throw DimensionMismatchError("unitary has wrong shape for its qudit count");
    }
    CMatrix gram = entries_.adjoint() * entries_;
    if ((gram - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
        throw InvalidGateError("matrix is not unitary");
    }
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(dim_, n_qudits_, entries_.adjoint());
}

StateVector make_state(Dimension dim, const CVector& amplitudes) {
    return StateVector(dim, amplitudes);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "tensor");
    CVector out(a.size() * b.size());
    for (std::int64_t i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a.amplitudes()[i] * b.amplitudes();
    }
    return StateVector(a.dim(), std::move(out));
}

namespace {
CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}
} // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "tensor");
    return DensityMatrix(a.dim(), kron(a.entries(), b.entries()));
}

UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "tensor");
    return UnitaryMatrix(a.dim(), a.n_qudits() + b.n_qudits(), kron(a.entries(), b.entries()));
}

namespace {

void check_targets(int n_qudits, std::span<const int> targets, int expected) {
    if (static_cast<int>(targets.size()) != expected) {
        throw DimensionMismatchError("wrong number of target qudits for this gate");
    }
    for (size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] < 0 || targets[i] >= n_qudits) {
            throw DimensionMismatchError("target qudit out of range");
        }
        for (size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw DimensionMismatchError("target qudits must be distinct");
            }
        }
    }
}

// Strides of each target position, plus the enumeration of base indices
// whose target digits are all zero.
struct Embedding {
    std::vector<std::int64_t> strides;      // per gate qudit
    std::vector<std::int64_t> bases;        // indices with zero target digits
    std::vector<std::int64_t> gate_offsets; // flat offset for each gate-space index
};

Embedding make_embedding(int d, int n, std::span<const int> targets) {
    Embedding e;
    for (int t : targets) e.strides.push_back(pow_ll(d, n - 1 - t));
    const std::int64_t total = pow_ll(d, n);
    const std::int64_t k = static_cast<std::int64_t>(targets.size());
    const std::int64_t gate_dim = pow_ll(d, static_cast<int>(k));
    e.gate_offsets.resize(gate_dim);
    for (std::int64_t m = 0; m < gate_dim; ++m) {
        std::int64_t off = 0, rest = m;
        for (std::int64_t j = k - 1; j >= 0; --j) {
            off += (rest % d) * e.strides[j];
            rest /= d;
        }
        e.gate_offsets[m] = off;
    }
    for (std::int64_t i = 0; i < total; ++i) {
        bool zero = true;
        for (std::int64_t s : e.strides) {
            if ((i / s) % d != 0) {
                zero = false;
                break;
            }
        }
        if (zero) e.bases.push_back(i);
    }
    return e;
}

} // namespace

StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets) {
    require_same_dim(state.dim(), u.dim(), "apply_unitary");
    check_targets(state.n_qudits(), targets, u.n_qudits());
    const int d = state.dim().value();
    const Embedding e = make_embedding(d, state.n_qudits(), targets);
    const std::int64_t gate_dim = static_cast<std::int64_t>(e.gate_offsets.size());
    CVector out = state.amplitudes();
    CVector sub(gate_dim);
    for (std::int64_t base : e.bases) {
        for (std::int64_t m = 0; m < gate_dim; ++m) sub[m] = out[base + e.gate_offsets[m]];
        CVector res = u.entries() * sub;
        for (std::int64_t m = 0; m < gate_dim; ++m) out[base + e.gate_offsets[m]] = res[m];
    }
    return unchecked_state(state.dim(), state.n_qudits(), std::move(out));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u,
                            std::span<const int> targets) {
    require_same_dim(rho.dim(), u.dim(), "apply_unitary");
    check_targets(rho.n_qudits(), targets, u.n_qudits());
    const int d = rho.dim().value();
    const Embedding e = make_embedding(d, rho.n_qudits(), targets);
    const std::int64_t gate_dim = static_cast<std::int64_t>(e.gate_offsets.size());
    // Build the embedded unitary once; register sizes here are small.
    const std::int64_t total = rho.entries().rows();
    CMatrix big = CMatrix::Zero(total, total);
    for (std::int64_t base : e.bases) {
        for (std::int64_t mi = 0; mi < gate_dim; ++mi) {
            for (std::int64_t mj = 0; mj < gate_dim; ++mj) {
                big(base + e.gate_offsets[mi], base + e.gate_offsets[mj]) = u.entries()(mi, mj);
            }
        }
    }
    return DensityMatrix(rho.dim(), big * rho.entries() * big.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    check_targets(rho.n_qudits(), keep, static_cast<int>(keep.size()));
    const int d = rho.dim().value();
    const int n = rho.n_qudits();
    std::vector<int> traced;
    for (int p = 0; p < n; ++p) {
        if (std::find(keep.begin(), keep.end(), p) == keep.end()) traced.push_back(p);
    }
    std::vector<std::int64_t> keep_strides, traced_strides;
    for (int p : keep) keep_strides.push_back(pow_ll(d, n - 1 - p));
    for (int p : traced) traced_strides.push_back(pow_ll(d, n - 1 - p));

    const std::int64_t out_dim = pow_ll(d, static_cast<int>(keep.size()));
    const std::int64_t env_dim = pow_ll(d, static_cast<int>(traced.size()));
    auto expand = [d](std::int64_t value, const std::vector<std::int64_t>& strides) {
        std::int64_t idx = 0;
        for (std::int64_t j = static_cast<std::int64_t>(strides.size()) - 1; j >= 0; --j) {
            idx += (value % d) * strides[j];
            value /= d;
        }
        return idx;
    };

    CMatrix out = CMatrix::Zero(out_dim, out_dim);
    for (std::int64_t a = 0; a < out_dim; ++a) {
        const std::int64_t ia = expand(a, keep_strides);
        for (std::int64_t b = 0; b < out_dim; ++b) {
            const std::int64_t ib = expand(b, keep_strides);
            Cx acc{0.0, 0.0};
            for (std::int64_t c = 0; c < env_dim; ++c) {
                const std::int64_t ic = expand(c, traced_strides);
                acc += rho.entries()(ia + ic, ib + ic);
            }
            out(a, b) = acc;
        }
    }
    return DensityMatrix(rho.dim(), std::move(out));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.dim() != b.dim() || a.n_qudits() != b.n_qudits()) {
        throw DimensionMismatchError("equal_up_to_global_phase: shape mismatch");
    }
    return std::abs(a.inner(b)) >= 1.0 - tol;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim() || a.n_qudits() != b.n_qudits()) {
        throw DimensionMismatchError("trace_distance: shape mismatch");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.entries() - b.entries(), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

MeasurementResult measure_computational(const StateVector& state, int target, SeededRng& rng) {
    const int pos[1] = {target};
    check_targets(state.n_qudits(), pos, 1);
    const int d = state.dim().value();
    std::vector<double> probs(d, 0.0);
    for (std::int64_t i = 0; i < state.size(); ++i) {
        probs[state.digit_of(i, target)] += std::norm(state.amplitudes()[i]);
    }
    const double x = rng.uniform_double();
    int outcome = -1;
    double acc = 0.0;
    for (int v = 0; v < d; ++v) {
        acc += probs[v];
        if (x < acc) {
            outcome = v;
            break;
        }
    }
    if (outcome < 0) {
        // x fell into the floating-point slack below 1; take the last
        // outcome that actually has support.
        for (int v = d - 1; v >= 0; --v) {
            if (probs[v] > 0.0) {
                outcome = v;
                break;
            }
        }
    }
    CVector collapsed = state.amplitudes();
    for (std::int64_t i = 0; i < state.size(); ++i) {
        if (state.digit_of(i, target) != outcome) collapsed[i] = Cx{0.0, 0.0};
    }
    collapsed /= std::sqrt(probs[outcome]);
    return MeasurementResult{outcome, unchecked_state(state.dim(), state.n_qudits(), std::move(collapsed)),
                             probs[outcome]};
}

} // namespace qnc
