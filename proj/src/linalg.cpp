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

#include "steerlab/linalg.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace steerlab::linalg {

namespace {

const Complex kI(0.0, 1.0);

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

} // namespace

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint().eval());
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix sigma_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw std::invalid_argument("PureState: empty amplitude vector");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kUnitNormTol) {
        throw ValidationError("norm: pure state norm deviates from 1 by " +
                              std::to_string(norm - 1.0));
    }
}

PureState PureState::basis_state(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) throw std::invalid_argument("basis_state: index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    return PureState(std::move(v));
}

ComplexMatrix PureState::projector() const {
    return amplitudes_ * amplitudes_.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    require_square(matrix_, "DensityMatrix");
    const Eigen::Index n = matrix_.rows();
    if (n != 2 && n != 4 && n != 8) {
        throw std::invalid_argument("DensityMatrix: dimension must be 2, 4 or 8, got " +
                                    std::to_string(n));
    }
    const double herm = hermiticity_error(matrix_);
    if (herm > kHermitianTol) {
        throw ValidationError("hermiticity: max |rho - rho^dag| = " + std::to_string(herm));
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw ValidationError("trace: Tr rho = " + std::to_string(tr.real()) + " + " +
                              std::to_string(tr.imag()) + "i");
    }
    // Eigenvalue check on the symmetrized matrix; hermiticity already bounded.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(((matrix_ + matrix_.adjoint()) / 2.0).eval(),
                                                    Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdTol) {
        throw ValidationError("psd: smallest eigenvalue = " + std::to_string(min_eig));
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& v) {
    return DensityMatrix(v.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::population(const PureState& v) const {
    if (v.dim() != dim()) throw std::invalid_argument("population: dimension mismatch");
    return (v.amplitudes().adjoint() * matrix_ * v.amplitudes())(0).real();
}

double DensityMatrix::purity() const {
    return (matrix_ * matrix_).trace().real();
}

ComplexMatrix partial_trace_detector(const ComplexMatrix& joint) {
    if (joint.rows() != 8 || joint.cols() != 8) {
        throw std::invalid_argument("partial_trace_detector: expected an 8x8 joint operator");
    }
    ComplexMatrix out(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            out(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
        }
    }
    return out;
}

DensityMatrix partial_trace_detector(const DensityMatrix& joint) {
    return DensityMatrix(partial_trace_detector(joint.matrix()));
}

PureState EigenSystem::state(Eigen::Index k) const {
    if (k < 0 || k >= vectors.cols()) throw std::invalid_argument("EigenSystem: index out of range");
    ComplexVector v = vectors.col(k);
    v /= v.norm();
    return PureState(std::move(v));
}

EigenSystem herm_eig(const ComplexMatrix& m) {
    require_square(m, "herm_eig");
    const double herm = hermiticity_error(m);
    if (herm > kHermEigInputTol) {
        throw std::invalid_argument("herm_eig: matrix is not Hermitian, max |m - m^dag| = " +
                                    std::to_string(herm));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(((m + m.adjoint()) / 2.0).eval());
    if (es.info() != Eigen::Success) {
        throw NumericError("herm_eig: eigensolver did not converge");
    }
    // Eigen returns ascending order; the contract is descending.
    const Eigen::Index n = m.rows();
    EigenSystem out;
    out.values = es.eigenvalues().reverse();
    out.vectors = ComplexMatrix(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    const EigenSystem es = herm_eig(m);
    Eigen::VectorXd lambda = es.values;
    // Eigenvalues at round-off scale are zeroed before the square root, which
    // would otherwise amplify them to sqrt(eps).
    const double floor = 1e-14 * std::max(lambda.maxCoeff(), 0.0);
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) < -kPsdTol) {
            throw ValidationError("psd: sqrt_psd eigenvalue = " + std::to_string(lambda(k)));
        }
        lambda(k) = lambda(k) <= floor ? 0.0 : std::sqrt(lambda(k));
    }
    return es.vectors * lambda.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t) {
    const EigenSystem es = herm_eig(h);
    ComplexVector phases(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        phases(k) = std::exp(-kI * es.values(k) * t);
    }
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

ComplexVector vectorize(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw std::invalid_argument("vectorize: expected a 4x4 matrix");
    }
    ComplexVector v(16);
    for (Eigen::Index j = 0; j < 4; ++j) {
        v.segment(4 * j, 4) = m.col(j);
    }
    return v;
}

ComplexMatrix devectorize(const ComplexVector& v) {
    if (v.size() != 16) {
        throw std::invalid_argument("devectorize: expected a 16-vector");
    }
    ComplexMatrix m(4, 4);
    for (Eigen::Index j = 0; j < 4; ++j) {
        m.col(j) = v.segment(4 * j, 4);
    }
    return m;
}

} // namespace steerlab::linalg
