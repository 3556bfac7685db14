// Copyright 2026 The Steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// metrics.hpp — quantum-correlation metrics for two-qubit states (Uhlmann
// fidelity, Wootters concurrence, PPT separability, quantum discord) plus the
// one-parameter-pair family of target states used throughout the examples:
//
//   rho(alpha, beta) = p1 |↑↑><↑↑| + p2 |ψ+><ψ+| + p3 |ψ-><ψ-| + p4 |↓↓><↓↓|
//
//   p1 = p4 = (1 - beta + alpha (1 + beta)) / 4
//   p2 = (1 - alpha)(1 - beta) / 4
//   p3 = (1 - alpha)(1 + 3 beta) / 4
//
// with |ψ±> = (|↑↓> ± |↓↑>)/√2 and alpha, beta in [0, 1]. For this family the
// discord and concurrence have closed forms; the numeric discord minimizer
// acts as an independent cross-check.
//
// Entropies are in bits; x·log2(x) is continued by 0 at x = 0 throughout.

#pragma once

#include "steerlab/linalg.hpp"
#include "steerlab/protocol.hpp"

namespace steerlab::metrics {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;

struct FamilyParams {
    FamilyParams(double alpha_in, double beta_in);

    double alpha;
    double beta;
};

/// {|↑↑>, |ψ+>, |ψ->, |↓↓>}, the family eigenbasis in its natural order.
protocol::OrthonormalBasis family_basis();

/// (p1, p2, p3, p4) in the family_basis order.
Eigen::Vector4d family_probabilities(const FamilyParams& params);

/// Target spectral decomposition in the analytic eigenbasis (no numerical
/// diagonalization, so degenerate probabilities keep the natural basis order).
protocol::TargetSpec family_target_spec(const FamilyParams& params);

DensityMatrix family_state(const FamilyParams& params);

/// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 1 - F, clamped to [0, 1].
double fidelity_deviation(const DensityMatrix& rho, const DensityMatrix& target);

/// Wootters concurrence: max(0, λ1-λ2-λ3-λ4) where λ are the descending
/// square roots of the eigenvalues of rho (σy⊗σy) rho* (σy⊗σy), conjugation
/// in the computational basis. Computed via the Hermitian form
/// sqrt(rho) (σy⊗σy) rho* (σy⊗σy) sqrt(rho).
double concurrence(const DensityMatrix& rho);

/// Closed-form family concurrence: (3β(1-α) - (1+α))/2 when
/// α < (3β-1)/(3β+1), else 0.
double concurrence_family(const FamilyParams& params);

/// Closed-form family discord; returns the α→1 / β→0 limits (both 0) at the
/// removable singularities.
double discord_family(const FamilyParams& params);

/// Quantum discord by brute force: mutual information minus classical
/// correlations maximized over projective measurements on the second qubit,
/// via a coarse (θ, φ) grid of at least `angular_resolution` directions
/// followed by golden-section refinement. Good to ~1e-3 for smooth states.
double discord_numeric(const DensityMatrix& rho, int angular_resolution = 64);

/// Peres-Horodecki: partial transpose on the second qubit is PSD
/// (min eigenvalue ≥ -1e-10). Equivalent to separability for two qubits.
bool is_ppt_separable(const DensityMatrix& rho);

// Two-qubit index helpers, exposed for tests and the discord oracle.
double von_neumann_entropy(const ComplexMatrix& rho);
ComplexMatrix reduced_first(const ComplexMatrix& rho);  // trace out qubit 2
ComplexMatrix reduced_second(const ComplexMatrix& rho); // trace out qubit 1
ComplexMatrix partial_transpose_second(const ComplexMatrix& rho);
ComplexMatrix swap_qubits(const ComplexMatrix& rho);

} // namespace steerlab::metrics
