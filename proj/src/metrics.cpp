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

#include "steerlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace steerlab::metrics {

namespace {

using linalg::Complex;

double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// c * log2(x), with the c = 0 limit continued by 0 even when x = 0.
double coef_log2(double c, double x) { return c == 0.0 ? 0.0 : c * std::log2(x); }

ComplexMatrix spin_flip() {
    return linalg::kron(linalg::pauli_y(), linalg::pauli_y());
}

/// Projector (I + n·σ)/2 for the Bloch direction (theta, phi), and its
/// antipode for sign = -1.
ComplexMatrix bloch_projector(double theta, double phi, int sign) {
    const double nx = sign * std::sin(theta) * std::cos(phi);
    const double ny = sign * std::sin(theta) * std::sin(phi);
    const double nz = sign * std::cos(theta);
    ComplexMatrix p(2, 2);
    p(0, 0) = 0.5 * (1.0 + nz);
    p(0, 1) = 0.5 * Complex(nx, -ny);
    p(1, 0) = 0.5 * Complex(nx, ny);
    p(1, 1) = 0.5 * (1.0 - nz);
    return p;
}

/// Average post-measurement entropy of qubit 1 after projecting qubit 2 along
/// (theta, phi): sum_k q_k S(rho_{1|k}). The quantity discord minimizes.
double conditional_entropy(const ComplexMatrix& rho, double theta, double phi) {
    double total = 0.0;
    for (int sign : {+1, -1}) {
        const ComplexMatrix pi = bloch_projector(theta, phi, sign);
        const ComplexMatrix e = linalg::kron(linalg::identity(2), pi);
        const ComplexMatrix post = e * rho * e;
        const double q = post.trace().real();
        if (q < 1e-14) continue;
        total += q * von_neumann_entropy(reduced_first(post) / q);
    }
    return total;
}

/// Golden-section minimization of f over [lo, hi] down to `tol`.
template <typename F>
double golden_min(F f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

FamilyParams::FamilyParams(double alpha_in, double beta_in) : alpha(alpha_in), beta(beta_in) {
    if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
        throw ValidationError("family parameters: alpha and beta must lie in [0, 1], got alpha = " +
                              std::to_string(alpha) + ", beta = " + std::to_string(beta));
    }
}

protocol::OrthonormalBasis family_basis() {
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix columns = ComplexMatrix::Zero(4, 4);
    columns(0, 0) = 1.0;               // |↑↑>
    columns(1, 1) = s;                 // |ψ+>
    columns(2, 1) = s;
    columns(1, 2) = s;                 // |ψ->
    columns(2, 2) = -s;
    columns(3, 3) = 1.0;               // |↓↓>
    return protocol::OrthonormalBasis(std::move(columns));
}

Eigen::Vector4d family_probabilities(const FamilyParams& params) {
    const double a = params.alpha;
    const double b = params.beta;
    Eigen::Vector4d p;
    p(0) = (1.0 - b + a * (1.0 + b)) / 4.0;
    p(1) = (1.0 - a) * (1.0 - b) / 4.0;
    p(2) = (1.0 - a) * (1.0 + 3.0 * b) / 4.0;
    p(3) = p(0);
    return p;
}

protocol::TargetSpec family_target_spec(const FamilyParams& params) {
    Eigen::Vector4d p = family_probabilities(params);
    p /= p.sum(); // algebraically 1; keep the sum-to-one invariant exact
    return protocol::TargetSpec(family_basis(), p);
}

DensityMatrix family_state(const FamilyParams& params) {
    return family_target_spec(params).state();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    const ComplexMatrix root = linalg::sqrt_psd(rho.matrix());
    ComplexMatrix inner = root * sigma.matrix() * root;
    inner = ((inner + inner.adjoint()) / 2.0).eval();
    const double tr = linalg::sqrt_psd(inner).trace().real();
    return tr * tr;
}

double fidelity_deviation(const DensityMatrix& rho, const DensityMatrix& target) {
    return std::clamp(1.0 - fidelity(rho, target), 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("concurrence: expected a two-qubit state");
    const ComplexMatrix flip = spin_flip();
    const ComplexMatrix root = linalg::sqrt_psd(rho.matrix());
    ComplexMatrix w = root * flip * rho.matrix().conjugate() * flip * root;
    w = ((w + w.adjoint()) / 2.0).eval();
    const linalg::EigenSystem es = linalg::herm_eig(w);
    Eigen::Vector4d lambda;
    for (int k = 0; k < 4; ++k) {
        lambda(k) = std::sqrt(std::max(es.values(k), 0.0));
    }
    return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double concurrence_family(const FamilyParams& params) {
    const double a = params.alpha;
    const double b = params.beta;
    if (a * (3.0 * b + 1.0) < 3.0 * b - 1.0) {
        return (3.0 * b * (1.0 - a) - (1.0 + a)) / 2.0;
    }
    return 0.0;
}

double discord_family(const FamilyParams& params) {
    const double a = params.alpha;
    const double b = params.beta;
    if (a == 1.0) return 0.0; // removable singularity, vanishing prefactor
    const double x = 1.0 - a;
    const double sum = coef_log2(1.0 - b, x * (1.0 - b))
                     - 2.0 * coef_log2(1.0 + b, x * (1.0 + b))
                     + coef_log2(1.0 + 3.0 * b, x * (1.0 + 3.0 * b));
    return x / 4.0 * sum;
}

double discord_numeric(const DensityMatrix& rho, int angular_resolution) {
    if (rho.dim() != 4) throw std::invalid_argument("discord_numeric: expected a two-qubit state");
    if (angular_resolution < 64) {
        throw std::invalid_argument("discord_numeric: angular_resolution must be at least 64");
    }
    const ComplexMatrix& m = rho.matrix();
    const double s_joint = von_neumann_entropy(m);
    const double s_measured = von_neumann_entropy(reduced_second(m));

    // Coarse sphere grid (poles included), then golden-section refinement of
    // the best cell, alternating between the two angles.
    const int n_theta = static_cast<int>(std::ceil(std::sqrt(angular_resolution / 2.0))) + 1;
    const int n_phi = 2 * (n_theta - 1);
    const double pi = std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    for (int ia = 0; ia < n_theta; ++ia) {
        const double theta = pi * ia / (n_theta - 1);
        for (int ib = 0; ib < n_phi; ++ib) {
            const double phi = 2.0 * pi * ib / n_phi;
            const double value = conditional_entropy(m, theta, phi);
            if (value < best) {
                best = value;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    const double d_theta = pi / (n_theta - 1);
    const double d_phi = 2.0 * pi / n_phi;
    constexpr double angle_tol = 1e-4;
    for (int round = 0; round < 3; ++round) {
        best_theta = golden_min(
            [&](double t) { return conditional_entropy(m, t, best_phi); },
            best_theta - d_theta, best_theta + d_theta, angle_tol);
        best_phi = golden_min(
            [&](double p) { return conditional_entropy(m, best_theta, p); },
            best_phi - d_phi, best_phi + d_phi, angle_tol);
    }
    best = std::min(best, conditional_entropy(m, best_theta, best_phi));
    return s_measured - s_joint + best;
}

bool is_ppt_separable(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw std::invalid_argument("is_ppt_separable: expected a two-qubit state");
    const linalg::EigenSystem es = linalg::herm_eig(partial_transpose_second(rho.matrix()));
    return es.values.minCoeff() >= -linalg::kPsdTol;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
    const linalg::EigenSystem es = linalg::herm_eig(rho);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        s -= xlog2(std::max(es.values(k), 0.0));
    }
    return s;
}

ComplexMatrix reduced_first(const ComplexMatrix& rho) {
    ComplexMatrix out(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        }
    }
    return out;
}

ComplexMatrix reduced_second(const ComplexMatrix& rho) {
    ComplexMatrix out(2, 2);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 2; ++b) {
            out(a, b) = rho(a, b) + rho(2 + a, 2 + b);
        }
    }
    return out;
}

ComplexMatrix partial_transpose_second(const ComplexMatrix& rho) {
    ComplexMatrix out(4, 4);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = rho.block<2, 2>(2 * i, 2 * j).transpose();
        }
    }
    return out;
}

ComplexMatrix swap_qubits(const ComplexMatrix& rho) {
    const auto swapped = [](Eigen::Index k) { return 2 * (k % 2) + k / 2; };
    ComplexMatrix out(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            out(swapped(r), swapped(c)) = rho(r, c);
        }
    }
    return out;
}

} // namespace steerlab::metrics
