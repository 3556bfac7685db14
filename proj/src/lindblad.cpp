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

#include "steerlab/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "steerlab/metrics.hpp"

namespace steerlab::lindblad {

namespace {

using linalg::Complex;

/// Clean up a numerically evolved state: symmetrize, renormalize the trace.
DensityMatrix sanitize_state(const ComplexMatrix& raw) {
    ComplexMatrix rho = ((raw + raw.adjoint()) / 2.0).eval();
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

ComplexVector sorted_eigenvalues(const ComplexMatrix& m) {
    Eigen::ComplexSchur<ComplexMatrix> schur(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
        throw NumericError("liouvillian spectrum: Schur decomposition did not converge");
    }
    ComplexVector values = schur.matrixT().diagonal();
    std::sort(values.begin(), values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() < b.imag();
    });
    return values;
}

} // namespace

Liouvillian::Liouvillian(ComplexMatrix matrix, OrthonormalBasis basis, Eigen::Vector4d rates)
    : matrix_(std::move(matrix)), basis_(std::move(basis)), rates_(std::move(rates)) {
    if (matrix_.rows() != 16 || matrix_.cols() != 16) {
        throw std::invalid_argument("Liouvillian: expected a 16x16 superoperator");
    }
    gbar_ = rates_.sum();
    eigenvalues_ = sorted_eigenvalues(matrix_);
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
    return linalg::devectorize(matrix_ * linalg::vectorize(rho));
}

Liouvillian build_liouvillian(const ProtocolSchedule& schedule) {
    const ComplexMatrix eye = linalg::identity(4);
    ComplexMatrix m = ComplexMatrix::Zero(16, 16);
    for (const auto& step : schedule.steps()) {
        const double g = schedule.rates()(step.target_index);
        if (g == 0.0) continue;
        const ComplexMatrix jump = schedule.basis().transfer(step.target_index, step.source_index);
        const ComplexMatrix absorb = jump.adjoint() * jump; // |B_j><B_j|
        m += g * (linalg::kron(jump.conjugate(), jump)
                  - 0.5 * linalg::kron(eye, absorb)
                  - 0.5 * linalg::kron(absorb.transpose(), eye));
    }
    return Liouvillian(std::move(m), schedule.basis(), schedule.rates());
}

DensityMatrix steady_state(const Liouvillian& liouvillian) {
    const double gbar = liouvillian.gbar();
    if (!(gbar > 0.0)) {
        throw ValidationError("no measurements configured: all rates are zero");
    }
    const ComplexMatrix scaled = liouvillian.matrix() / gbar;
    Eigen::JacobiSVD<ComplexMatrix> svd(scaled, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double second_smallest = sigma(sigma.size() - 2);
    if (second_smallest < kDegenerateRel) {
        throw NumericError("steady state is not unique: singular values " +
                           std::to_string(sigma(sigma.size() - 1)) + ", " +
                           std::to_string(second_smallest) + " (in units of gbar)");
    }
    ComplexMatrix rho = linalg::devectorize(svd.matrixV().col(15));
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-8) {
        throw NumericError("steady state extraction: null vector is traceless");
    }
    rho /= tr;
    rho = ((rho + rho.adjoint()) / 2.0).eval();

    // Clamp round-off negatives so the result passes the PSD invariant.
    const linalg::EigenSystem es = linalg::herm_eig(rho);
    Eigen::Vector4d lambda = es.values;
    for (int k = 0; k < 4; ++k) lambda(k) = std::max(lambda(k), 0.0);
    lambda /= lambda.sum();
    rho = es.vectors * lambda.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    DensityMatrix result(std::move(rho));

    const double residual = linalg::max_abs(liouvillian.apply(result.matrix())) / gbar;
    if (residual > 1e-10) {
        throw NumericError("steady state residual |L[rho]|/gbar = " + std::to_string(residual));
    }
    return result;
}

double spectral_gap(const Liouvillian& liouvillian) {
    const double gbar = liouvillian.gbar();
    if (!(gbar > 0.0)) {
        throw ValidationError("no measurements configured: all rates are zero");
    }
    const double zero_threshold = kZeroEigRel * gbar;
    double gap = std::numeric_limits<double>::infinity();
    int zero_modes = 0;
    for (const Complex& lambda : liouvillian.eigenvalues()) {
        if (std::abs(lambda) < zero_threshold) {
            ++zero_modes;
        } else {
            gap = std::min(gap, std::abs(lambda.real()));
        }
    }
    if (zero_modes == 0) {
        throw NumericError("spectral gap: no zero eigenvalue found");
    }
    return gap;
}

EvolutionResult evolve_master(const Liouvillian& liouvillian, const DensityMatrix& rho0,
                              const std::vector<double>& t_grid, const DensityMatrix& rho_target) {
    if (t_grid.empty()) throw std::invalid_argument("evolve_master: empty time grid");
    if (t_grid.front() < 0.0) throw std::invalid_argument("evolve_master: negative start time");
    for (std::size_t k = 1; k < t_grid.size(); ++k) {
        if (t_grid[k] <= t_grid[k - 1]) {
            throw std::invalid_argument("evolve_master: time grid must be strictly increasing");
        }
    }
    const ComplexMatrix& m = liouvillian.matrix();
    const ComplexVector vec0 = linalg::vectorize(rho0.matrix());

    // Spectral propagation when M is numerically diagonalizable, otherwise
    // scaling-and-squaring per grid point.
    bool spectral = false;
    Eigen::ComplexEigenSolver<ComplexMatrix> ces;
    ComplexVector coeffs;
    ces.compute(m);
    if (ces.info() == Eigen::Success) {
        const ComplexMatrix recon =
            ces.eigenvectors() * ces.eigenvalues().asDiagonal() * ces.eigenvectors().inverse();
        const double scale = std::max(1.0, linalg::max_abs(m));
        if (linalg::max_abs(recon - m) <= 1e-9 * scale) {
            spectral = true;
            coeffs = ces.eigenvectors().partialPivLu().solve(vec0);
        }
    }

    EvolutionResult result;
    result.times.reserve(t_grid.size());
    result.states.reserve(t_grid.size());
    result.fidelity_deviation.reserve(t_grid.size());
    for (const double t : t_grid) {
        ComplexVector vec_t;
        if (spectral) {
            ComplexVector phases(16);
            for (Eigen::Index k = 0; k < 16; ++k) {
                phases(k) = std::exp(ces.eigenvalues()(k) * t) * coeffs(k);
            }
            vec_t = ces.eigenvectors() * phases;
        } else {
            vec_t = (m * t).exp() * vec0;
        }
        DensityMatrix state = sanitize_state(linalg::devectorize(vec_t));
        result.times.push_back(liouvillian.gbar() * t);
        result.fidelity_deviation.push_back(metrics::fidelity_deviation(state, rho_target));
        result.states.push_back(std::move(state));
    }
    return result;
}

ComplexMatrix blind_step(const ComplexMatrix& rho, const MeasurementStep& step,
                         const OrthonormalBasis& basis) {
    const ComplexMatrix h = protocol::interaction_hamiltonian(step, basis);
    const ComplexMatrix u = linalg::expm_hermitian_generator(h, step.duration);
    const ComplexMatrix detector = linalg::sigma_plus() * linalg::sigma_minus(); // |↑><↑|
    const ComplexMatrix joint = linalg::kron(rho, detector);
    return linalg::partial_trace_detector((u * joint * u.adjoint()).eval());
}

EvolutionResult evolve_discrete(const ProtocolSchedule& schedule, const DensityMatrix& rho0,
                                int n_cycles) {
    if (n_cycles < 1) throw std::invalid_argument("evolve_discrete: n_cycles must be at least 1");
    const DensityMatrix target = schedule.target_state();
    const ComplexMatrix detector = linalg::sigma_plus() * linalg::sigma_minus();

    std::vector<ComplexMatrix> unitaries;
    unitaries.reserve(schedule.steps().size());
    for (const auto& step : schedule.steps()) {
        const ComplexMatrix h = protocol::interaction_hamiltonian(step, schedule.basis());
        unitaries.push_back(linalg::expm_hermitian_generator(h, step.duration));
    }

    EvolutionResult result;
    const double gbar_dt = schedule.gbar() * schedule.cycle_duration();
    result.times.push_back(0.0);
    result.states.push_back(rho0);
    result.fidelity_deviation.push_back(metrics::fidelity_deviation(rho0, target));

    ComplexMatrix rho = rho0.matrix();
    for (int cycle = 1; cycle <= n_cycles; ++cycle) {
        for (const ComplexMatrix& u : unitaries) {
            const ComplexMatrix joint = linalg::kron(rho, detector);
            rho = linalg::partial_trace_detector((u * joint * u.adjoint()).eval());
        }
        DensityMatrix state = sanitize_state(rho);
        result.times.push_back(gbar_dt * cycle);
        result.fidelity_deviation.push_back(metrics::fidelity_deviation(state, target));
        result.states.push_back(std::move(state));
    }
    return result;
}

} // namespace steerlab::lindblad
