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

// lindblad.hpp — the measurement-induced Lindbladian as a 16x16 superoperator
// on column-stacked states:
//
//   drho/dt = -1/2 sum_i g_i sum_j ( {L_j^(i)† L_j^(i), rho} - 2 L_j^(i) rho L_j^(i)† )
//
// with L_j^(i) = (1 - delta_ij)|B_i><B_j|. There is no Hamiltonian term: the
// commutator contribution of the weak-coupling expansion vanishes identically
// for a detector initialized in |↑> (<↑|σ±|↑> = 0; asserted in tests).
//
// Master-equation evolution is exact exponentiation of the superoperator, so
// no integrator tolerance enters the error budget at this size.

#pragma once

#include <vector>

#include "steerlab/linalg.hpp"
#include "steerlab/protocol.hpp"

namespace steerlab::lindblad {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::DensityMatrix;
using protocol::MeasurementStep;
using protocol::OrthonormalBasis;
using protocol::ProtocolSchedule;

/// Eigenvalues with |λ| below kZeroEigRel·gbar count as the zero mode.
inline constexpr double kZeroEigRel = 1e-9;
/// A second singular value of the superoperator below kDegenerateRel (after
/// normalizing by gbar) means the steady state is not unique.
inline constexpr double kDegenerateRel = 1e-6;

/// The 16x16 generator matrix, its rates/basis, and its spectrum (computed at
/// build time, sorted by descending real part). Immutable after construction.
class Liouvillian {
  public:
    Liouvillian(ComplexMatrix matrix, OrthonormalBasis basis, Eigen::Vector4d rates);

    const ComplexMatrix& matrix() const { return matrix_; }
    const OrthonormalBasis& basis() const { return basis_; }
    const Eigen::Vector4d& rates() const { return rates_; }
    double gbar() const { return gbar_; }
    const ComplexVector& eigenvalues() const { return eigenvalues_; }

    /// L[rho] = devectorize(M · vectorize(rho)).
    ComplexMatrix apply(const ComplexMatrix& rho) const;

  private:
    ComplexMatrix matrix_;
    OrthonormalBasis basis_;
    Eigen::Vector4d rates_;
    double gbar_;
    ComplexVector eigenvalues_;
};

/// Assemble the superoperator for a schedule using
/// vec(A rho B) = (Bᵀ ⊗ A) vec(rho).
Liouvillian build_liouvillian(const ProtocolSchedule& schedule);

/// The unique unit-trace Hermitian PSD null vector, extracted by SVD,
/// symmetrized and renormalized. Residual contract: |L[rho]| ≤ 1e-10·gbar.
/// Throws ValidationError when all rates vanish and NumericError when the
/// null space is degenerate beyond multiplicity one.
DensityMatrix steady_state(const Liouvillian& liouvillian);

/// Smallest |Re λ| over the nonzero eigenvalues; sets the convergence rate.
double spectral_gap(const Liouvillian& liouvillian);

/// Time series of states. `times` are dimensionless gbar·t; deviations are
/// against the evolution's target state.
struct EvolutionResult {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<double> fidelity_deviation;
};

/// rho(t) = devectorize(exp(M t) vectorize(rho0)) on the given physical time
/// grid (nonnegative, strictly increasing). Uses the eigendecomposition of M
/// when it reconstructs well, otherwise falls back to scaling-and-squaring
/// per grid point.
EvolutionResult evolve_master(const Liouvillian& liouvillian, const DensityMatrix& rho0,
                              const std::vector<double>& t_grid, const DensityMatrix& rho_target);

/// One blind measurement step: couple a fresh |↑> detector, evolve with
/// U = exp(-i H tau), trace the detector out.
ComplexMatrix blind_step(const ComplexMatrix& rho, const MeasurementStep& step,
                         const OrthonormalBasis& basis);

/// Repeat the 12-step cycle n_cycles times, recording the state once per
/// cycle (dt = 12 tau). Fidelity deviations are against the schedule's own
/// target state.
EvolutionResult evolve_discrete(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                                int n_cycles);

} // namespace steerlab::lindblad
