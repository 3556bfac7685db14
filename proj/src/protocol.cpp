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

#include "steerlab/protocol.hpp"

#include <cmath>
#include <string>

namespace steerlab::protocol {

OrthonormalBasis::OrthonormalBasis(ComplexMatrix columns) : columns_(std::move(columns)) {
    if (columns_.rows() != 4 || columns_.cols() != 4) {
        throw std::invalid_argument("OrthonormalBasis: expected a 4x4 column matrix");
    }
    const ComplexMatrix gram = columns_.adjoint() * columns_;
    const double err = linalg::max_abs(gram - ComplexMatrix::Identity(4, 4));
    if (err > kOrthonormalTol) {
        throw ValidationError("orthonormality: max |<B_i|B_j> - delta_ij| = " +
                              std::to_string(err));
    }
}

OrthonormalBasis OrthonormalBasis::computational() {
    return OrthonormalBasis(ComplexMatrix::Identity(4, 4));
}

PureState OrthonormalBasis::state(int i) const {
    if (i < 0 || i > 3) throw std::invalid_argument("OrthonormalBasis: index out of range");
    ComplexVector v = columns_.col(i);
    v /= v.norm();
    return PureState(std::move(v));
}

ComplexMatrix OrthonormalBasis::projector(int i) const { return transfer(i, i); }

ComplexMatrix OrthonormalBasis::transfer(int i, int j) const {
    if (i < 0 || i > 3 || j < 0 || j > 3) {
        throw std::invalid_argument("OrthonormalBasis: index out of range");
    }
    return columns_.col(i) * columns_.col(j).adjoint();
}

TargetSpec::TargetSpec(OrthonormalBasis basis_in, Eigen::Vector4d probabilities_in)
    : basis(std::move(basis_in)), probabilities(std::move(probabilities_in)) {
    for (int i = 0; i < 4; ++i) {
        if (probabilities(i) < 0.0) {
            throw ValidationError("probability: p_" + std::to_string(i) + " = " +
                                  std::to_string(probabilities(i)) + " is negative");
        }
    }
    const double sum = probabilities.sum();
    if (std::abs(sum - 1.0) > kProbabilitySumTol) {
        throw ValidationError("probability: sum p_i = " + std::to_string(sum));
    }
}

DensityMatrix TargetSpec::state() const {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        rho += probabilities(i) * basis.projector(i);
    }
    return DensityMatrix(std::move(rho));
}

ProtocolSchedule::ProtocolSchedule(OrthonormalBasis basis, Eigen::Vector4d rates, double tau)
    : basis_(std::move(basis)), rates_(std::move(rates)), tau_(tau) {
    if (!(tau_ > 0.0)) throw std::invalid_argument("ProtocolSchedule: tau must be positive");
    for (int i = 0; i < 4; ++i) {
        if (rates_(i) < 0.0) {
            throw std::invalid_argument("ProtocolSchedule: rate g_" + std::to_string(i) +
                                        " is negative");
        }
    }
    gbar_ = rates_.sum();
    steps_.reserve(12);
    for (int target = 0; target < 4; ++target) {
        const double coupling = std::sqrt(12.0 * rates_(target) / tau_);
        for (int source = 0; source < 4; ++source) {
            if (source == target) continue;
            steps_.push_back(MeasurementStep{target, source, coupling, tau_});
        }
    }
}

double ProtocolSchedule::max_coupling_phase() const {
    double max_phase = 0.0;
    for (const auto& step : steps_) {
        max_phase = std::max(max_phase, step.coupling * step.duration);
    }
    return max_phase;
}

DensityMatrix ProtocolSchedule::target_state() const {
    if (!(gbar_ > 0.0)) {
        throw ValidationError("no measurements configured: all rates are zero");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        rho += (rates_(i) / gbar_) * basis_.projector(i);
    }
    return DensityMatrix(std::move(rho));
}

TargetSpec diagonalize_target(const DensityMatrix& rho_target) {
    if (rho_target.dim() != 4) {
        throw std::invalid_argument("diagonalize_target: expected a 4x4 system state");
    }
    const linalg::EigenSystem es = linalg::herm_eig(rho_target.matrix());
    Eigen::Vector4d p;
    for (int i = 0; i < 4; ++i) {
        p(i) = std::max(es.values(i), 0.0); // round-off can leave tiny negatives
    }
    p /= p.sum();
    return TargetSpec(OrthonormalBasis(es.vectors), p);
}

ProtocolSchedule assign_couplings(const TargetSpec& spec, double gbar, double tau) {
    if (!(gbar > 0.0)) throw std::invalid_argument("assign_couplings: gbar must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("assign_couplings: tau must be positive");
    return ProtocolSchedule(spec.basis, (gbar * spec.probabilities).eval(), tau);
}

ComplexMatrix interaction_hamiltonian(const MeasurementStep& step, const OrthonormalBasis& basis) {
    if (step.target_index == step.source_index) {
        throw std::invalid_argument("interaction_hamiltonian: target and source coincide");
    }
    const ComplexMatrix lower = basis.transfer(step.target_index, step.source_index);
    ComplexMatrix h = step.coupling * linalg::kron(lower, linalg::sigma_minus());
    h += h.adjoint().eval();
    return h;
}

std::array<ComplexMatrix, 4> jump_operators(const OrthonormalBasis& basis, int target_index) {
    if (target_index < 0 || target_index > 3) {
        throw std::invalid_argument("jump_operators: target index out of range");
    }
    std::array<ComplexMatrix, 4> ops;
    for (int j = 0; j < 4; ++j) {
        ops[j] = (j == target_index) ? ComplexMatrix::Zero(4, 4)
                                     : basis.transfer(target_index, j);
    }
    return ops;
}

} // namespace steerlab::protocol
