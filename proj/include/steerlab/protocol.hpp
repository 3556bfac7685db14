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

// protocol.hpp — turns a target density matrix into an executable measurement
// schedule: spectral decomposition, detector coupling assignment, interaction
// Hamiltonians and Lindblad jump operators.
//
// One full cycle is 12 measurement steps of duration tau: for each target
// state B_i (round-robin i = 0..3) the detector i acts three times, once per
// source state B_j (j != i, ascending). The step ordering only affects O(tau^2)
// terms of the dynamics; it is fixed so runs are reproducible.

#pragma once

#include <array>
#include <vector>

#include "steerlab/linalg.hpp"

namespace steerlab::protocol {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::DensityMatrix;
using linalg::PureState;

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kProbabilitySumTol = 1e-12;

/// Couplings with J*tau above this leave the weak-measurement regime; callers
/// should warn but proceed.
inline constexpr double kWeakRegimeJtau = 0.3;

/// Four orthonormal states of the two-qubit Hilbert space, stored as the
/// columns of a 4x4 matrix. Pairwise inner products are checked against
/// delta_ij to kOrthonormalTol.
class OrthonormalBasis {
  public:
    explicit OrthonormalBasis(ComplexMatrix columns);

    /// Computational basis {|↑↑>, |↑↓>, |↓↑>, |↓↓>}.
    static OrthonormalBasis computational();

    const ComplexMatrix& matrix() const { return columns_; }
    PureState state(int i) const;
    ComplexMatrix projector(int i) const;       // |B_i><B_i|
    ComplexMatrix transfer(int i, int j) const; // |B_i><B_j|

  private:
    ComplexMatrix columns_;
};

/// Spectral decomposition of a target state: rho_T = sum_i p_i |B_i><B_i|.
struct TargetSpec {
    TargetSpec(OrthonormalBasis basis_in, Eigen::Vector4d probabilities_in);

    OrthonormalBasis basis;
    Eigen::Vector4d probabilities;

    DensityMatrix state() const;
};

/// One weak measurement: detector `target_index` coupled to the system for
/// `duration` with strength `coupling`, steering B_source -> B_target.
struct MeasurementStep {
    int target_index = 0;
    int source_index = 0;
    double coupling = 0.0; // J, units 1/time
    double duration = 0.0; // tau
};

/// The full 12-step cycle with per-detector rates g_i = J_i^2 tau / 12.
/// Zero-rate detectors keep their steps with J = 0 so the cycle length and
/// dt = 12 tau bookkeeping stay uniform.
class ProtocolSchedule {
  public:
    ProtocolSchedule(OrthonormalBasis basis, Eigen::Vector4d rates, double tau);

    const std::vector<MeasurementStep>& steps() const { return steps_; }
    const OrthonormalBasis& basis() const { return basis_; }
    const Eigen::Vector4d& rates() const { return rates_; }
    double tau() const { return tau_; }
    double gbar() const { return gbar_; }
    double cycle_duration() const { return 12.0 * tau_; }

    /// max_i J_i * tau; compare against kWeakRegimeJtau.
    double max_coupling_phase() const;

    /// The state the schedule stabilizes, sum_i g_i |B_i><B_i| / gbar.
    DensityMatrix target_state() const;

  private:
    OrthonormalBasis basis_;
    Eigen::Vector4d rates_;
    double tau_;
    double gbar_;
    std::vector<MeasurementStep> steps_;
};

/// Eigendecomposition of a target state into basis + probabilities, sorted by
/// descending probability. Tiny negative eigenvalues (within the PSD
/// tolerance) are clamped to zero and the probabilities renormalized.
TargetSpec diagonalize_target(const DensityMatrix& rho_target);

/// Assign detector rates g_i = gbar * p_i (couplings J_i = sqrt(12 g_i / tau))
/// and emit the 12-step cycle.
ProtocolSchedule assign_couplings(const TargetSpec& spec, double gbar, double tau);

/// H = J (|B_i><B_j| ⊗ σ⁻ + h.c.), the 8x8 system-detector coupling of one
/// step. Commutes with |B_i><B_i| ⊗ |↑><↑|, so the target is a dark state.
ComplexMatrix interaction_hamiltonian(const MeasurementStep& step, const OrthonormalBasis& basis);

/// L_j^(i) = (1 - delta_ij) |B_i><B_j|, with L_i^(i) = 0 kept for completeness.
std::array<ComplexMatrix, 4> jump_operators(const OrthonormalBasis& basis, int target_index);

} // namespace steerlab::protocol
