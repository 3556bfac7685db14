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

// linalg.hpp — dense complex linear algebra shared by every module: Pauli and
// ladder operators, Kronecker products, detector partial trace, Hermitian
// eigendecomposition, PSD square root, generator exponentials, vectorization.
//
// Conventions fixed project-wide:
//   * tensor ordering is system ⊗ detector, detector basis {|↑>, |↓>} with
//     |↑> first; joint index (i, d) maps to 2*i + d;
//   * vectorization is column-stacking, so vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ).

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "steerlab/errors.hpp"

namespace steerlab::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Validation tolerances. These are the contract, not the method.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kHermEigInputTol = 1e-10;

/// Largest entrywise absolute value.
double max_abs(const ComplexMatrix& m);

/// max |m - m†|, zero for exactly Hermitian input.
double hermiticity_error(const ComplexMatrix& m);

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix sigma_plus();  // |↑><↓|
ComplexMatrix sigma_minus(); // |↓><↑|

/// Kronecker product, block (i,j) equals a(i,j)·b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Unit-norm state vector. Norm must be within kUnitNormTol of 1.
class PureState {
  public:
    explicit PureState(ComplexVector amplitudes);

    static PureState basis_state(Eigen::Index dim, Eigen::Index k);

    Eigen::Index dim() const { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

    /// |v><v|.
    ComplexMatrix projector() const;

  private:
    ComplexVector amplitudes_;
};

/// Trace-one Hermitian PSD matrix of dimension 2 (detector), 4 (system) or
/// 8 (joint system-detector). Construction validates:
///   hermiticity  max |ρ - ρ†|  ≤ 1e-12
///   trace        |Tr ρ - 1|    ≤ 1e-12
///   psd          min eigenvalue ≥ -1e-10
/// and throws ValidationError whose message starts with the failed check.
class DensityMatrix {
  public:
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix from_pure(const PureState& v);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    Eigen::Index dim() const { return matrix_.rows(); }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// <v|ρ|v> (real part; imaginary part is round-off for valid inputs).
    double population(const PureState& v) const;

    /// Tr ρ².
    double purity() const;

  private:
    ComplexMatrix matrix_;
};

/// Trace over the detector qubit of an 8×8 joint operator:
/// out(i,j) = Σ_d joint(2i+d, 2j+d).
ComplexMatrix partial_trace_detector(const ComplexMatrix& joint);
DensityMatrix partial_trace_detector(const DensityMatrix& joint);

/// Result of herm_eig: values sorted descending, vectors(:,k) the matching
/// orthonormal eigenvector columns.
struct EigenSystem {
    Eigen::VectorXd values;
    ComplexMatrix vectors;

    PureState state(Eigen::Index k) const;
};

/// Eigendecomposition of a Hermitian matrix (checked to kHermEigInputTol).
EigenSystem herm_eig(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-kPsdTol, 0) are clamped to 0;
/// more negative values throw.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// exp(-i·h·t) for Hermitian h, computed spectrally; the result is unitary.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t);

/// Column-stacking vectorization of a 4×4 matrix: v(i + 4j) = m(i,j).
ComplexVector vectorize(const ComplexMatrix& m);

/// Inverse of vectorize, 16-vector to 4×4.
ComplexMatrix devectorize(const ComplexVector& v);

} // namespace steerlab::linalg
