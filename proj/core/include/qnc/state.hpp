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

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qnc/dimension.hpp"
#include "qnc/rng.hpp"

namespace qnc {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Index layout is big-endian throughout: the leftmost tensor factor is the
// most significant base-d digit, so |j0 j1 ... j_{n-1}> sits at index
// j0*d^{n-1} + j1*d^{n-2} + ... + j_{n-1}.

class DensityMatrix;

/// Pure state of n qudits: d^n complex amplitudes, unit norm.
class StateVector {
  public:
    /// Normalizes the input. Throws DimensionMismatchError if the length is
    /// not d^n for some n >= 1, DegenerateInputError if all amplitudes are 0.
    StateVector(Dimension dim, CVector amplitudes);

    /// Computational basis state |digits[0] digits[1] ...>.
    static StateVector basis(Dimension dim, std::span<const int> digits);
    /// Single-qudit basis state |value>.
    static StateVector basis1(Dimension dim, int value);

    const Dimension& dim() const { return dim_; }
    int n_qudits() const { return n_qudits_; }
    std::int64_t size() const { return amps_.size(); }
    const CVector& amplitudes() const { return amps_; }

    Cx inner(const StateVector& other) const; // <this|other>
    DensityMatrix to_density() const;

    /// Base-d digit of a flat index at qudit position pos.
    int digit_of(std::int64_t index, int pos) const;

  private:
    friend StateVector unchecked_state(Dimension, int, CVector);
    struct Unchecked {};
    StateVector(Dimension dim, int n, CVector amps, Unchecked);

    Dimension dim_;
    int n_qudits_;
    CVector amps_;
};

/// Mixed state: Hermitian, unit-trace, positive semidefinite d^n x d^n matrix.
class DensityMatrix {
  public:
    /// Validates Hermiticity and unit trace within 1e-9 and eigenvalues
    /// >= -1e-9; throws DegenerateInputError otherwise.
    DensityMatrix(Dimension dim, CMatrix entries);

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(Dimension dim, int n_qudits);

    const Dimension& dim() const { return dim_; }
    int n_qudits() const { return n_qudits_; }
    const CMatrix& entries() const { return entries_; }

  private:
    Dimension dim_;
    int n_qudits_;
    CMatrix entries_;
};

/// A k-qudit gate. Construction rejects matrices with U^dag U != I
/// (within the given tolerance) with InvalidGateError.
class UnitaryMatrix {
  public:
    UnitaryMatrix(Dimension dim, int n_qudits, CMatrix entries, double tol = 1e-6);

    const Dimension& dim() const { return dim_; }
    int n_qudits() const { return n_qudits_; }
    const CMatrix& entries() const { return entries_; }

    UnitaryMatrix adjoint() const;

  private:
    Dimension dim_;
    int n_qudits_;
    CMatrix entries_;
};

/// Normalizing constructor for states (same contract as the StateVector ctor).
StateVector make_state(Dimension dim, const CVector& amplitudes);

/// Internal: wraps amplitudes already known to form a valid unit-norm state
/// without renormalizing (keeps exact phases through unitary pipelines).
StateVector unchecked_state(Dimension dim, int n_qudits, CVector amps);

// Kronecker products; qudit ordering is left-operand-first.
StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
UnitaryMatrix tensor(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// Applies a k-qudit gate to the given (distinct) target positions of an
/// n-qudit register. Target order matters: targets[0] is the gate's first
/// (most significant) qudit.
StateVector apply_unitary(const StateVector& state, const UnitaryMatrix& u,
                          std::span<const int> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u,
                            std::span<const int> targets);

/// Reduced state on the kept positions, in the order given by `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// True iff |<a|b>| >= 1 - tol.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                              double tol = kDefaultTol);

/// (1/2) * trace norm of (a - b), via the eigenvalues of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

struct MeasurementResult {
    int outcome;
    StateVector collapsed; // same register size; the measured qudit stays in place
    double probability;
};

/// Computational-basis measurement of one qudit, sampled through the
/// injected generator (Born rule); the collapsed state is renormalized.
MeasurementResult measure_computational(const StateVector& state, int target,
                                        SeededRng& rng);

} // namespace qnc
