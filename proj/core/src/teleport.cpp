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
#include "qnc/teleport.hpp"

#include <cmath>

#include "qnc/errors.hpp"

namespace qnc {

namespace {

// Partial inner products <psi(m1,m2)|_pair state> for all d^2 outcomes.
// residuals[m1*d+m2] is the unnormalized remaining-register vector; its
// squared norm is the outcome probability.
struct Projections {
    std::vector<CVector> residuals;
    std::vector<double> probs;
    int n_rest;
};

Projections project_bell(const StateVector& state, std::pair<int, int> pair) {
    const int n = state.n_qudits();
    const int d = state.dim().value();
    if (pair.first == pair.second || pair.first < 0 || pair.second < 0 || pair.first >= n ||
        pair.second >= n) {
        throw DimensionMismatchError("bell_measure: pair indices must be distinct and in range");
    }
    const int n_rest = n - 2;
    const std::int64_t rest_size = pow_ll(d, n_rest);
    const std::int64_t sa = pow_ll(d, n - 1 - pair.first);
    const std::int64_t sb = pow_ll(d, n - 1 - pair.second);

    // Map each full index to (a, b, rest-index) once.
    std::vector<int> rest_pos;
    for (int p = 0; p < n; ++p) {
        if (p != pair.first && p != pair.second) rest_pos.push_back(p);
    }
    std::vector<std::int64_t> rest_strides;
    for (int p : rest_pos) rest_strides.push_back(pow_ll(d, n - 1 - p));

    Projections out;
    out.n_rest = n_rest;
    out.residuals.assign(static_cast<size_t>(d) * d, CVector::Zero(rest_size));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::int64_t i = 0; i < state.size(); ++i) {
        const Cx amp = state.amplitudes()[i];
        if (amp == Cx{0.0, 0.0}) continue;
        const int a = static_cast<int>((i / sa) % d);
        const int b = static_cast<int>((i / sb) % d);
        std::int64_t r = 0;
        for (size_t k = 0; k < rest_pos.size(); ++k) {
            r = r * d + static_cast<int>((i / rest_strides[k]) % d);
        }
        // <psi(m1,m2)| has support on b = a + m2 with weight conj(omega^{a m1})/sqrt(d).
        const int m2 = state.dim().mod(b - a);
        for (int m1 = 0; m1 < d; ++m1) {
            out.residuals[static_cast<size_t>(m1) * d + m2][r] +=
                scale * state.dim().omega(-static_cast<long long>(a) * m1) * amp;
        }
    }
    out.probs.resize(static_cast<size_t>(d) * d);
    for (size_t k = 0; k < out.residuals.size(); ++k) out.probs[k] = out.residuals[k].squaredNorm();
    return out;
}

BellMeasurement finish(const StateVector& state, Projections&& proj, int m1, int m2) {
    const int d = state.dim().value();
    const size_t k = static_cast<size_t>(m1) * d + m2;
    const double p = proj.probs[k];
    BellMeasurement result{BellOutcome{m1, m2}, p, std::nullopt};
    if (proj.n_rest > 0 && p > 0.0) {
        result.residual =
            unchecked_state(state.dim(), proj.n_rest, proj.residuals[k] / std::sqrt(p));
    }
    return result;
}

} // namespace

BellMeasurement bell_measure(const StateVector& state, std::pair<int, int> pair, SeededRng& rng) {
    Projections proj = project_bell(state, pair);
    const int d = state.dim().value();
    const double x = rng.uniform_double();
    int pick = -1;
    double acc = 0.0;
    for (int k = 0; k < d * d; ++k) {
        acc += proj.probs[k];
        if (x < acc) {
            pick = k;
            break;
        }
    }
    if (pick < 0) {
        // Floating-point slack below 1: take the last outcome with support.
        for (int k = d * d - 1; k >= 0; --k) {
            if (proj.probs[k] > 0.0) {
                pick = k;
                break;
            }
        }
    }
    return finish(state, std::move(proj), pick / d, pick % d);
}

BellMeasurement bell_measure_forced(const StateVector& state, std::pair<int, int> pair,
                                    BellOutcome forced) {
    const int d = state.dim().value();
    if (forced.m1 < 0 || forced.m1 >= d || forced.m2 < 0 || forced.m2 >= d) {
        throw DimensionMismatchError("bell_measure_forced: outcome out of range");
    }
    Projections proj = project_bell(state, pair);
    return finish(state, std::move(proj), forced.m1, forced.m2);
}

StateVector correct(const StateVector& state, BellOutcome outcome, int target) {
    const int pos[1] = {target};
    return apply_unitary(state, u_gate(state.dim(), outcome.m1, outcome.m2), pos);
}

} // namespace qnc
