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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "steerlab/linalg.hpp"
#include "test_util.hpp"

using namespace steerlab;
using namespace steerlab::linalg;
using steerlab::test::make_rng;

TEST_CASE("kron identity and diagonal structure") {
    CHECK(max_abs(kron(identity(2), identity(2)) - identity(4)) == 0.0);

    const ComplexMatrix zi = kron(pauli_z(), identity(2));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = 1.0;
    expected(2, 2) = -1.0;
    expected(3, 3) = -1.0;
    CHECK(max_abs(zi - expected) == 0.0);
}

TEST_CASE("kron of up projector with lowering operator") {
    // Hand expansion of the block rule: only entry is a 1 at row 1, column 0.
    const ComplexMatrix up = sigma_plus() * sigma_minus(); // |↑><↑|
    const ComplexMatrix m = kron(up, sigma_minus());
    CHECK(m.rows() == 4);
    CHECK(m(1, 0) == Complex(1.0, 0.0));
    ComplexMatrix rest = m;
    rest(1, 0) = 0.0;
    CHECK(max_abs(rest) == 0.0);
}

TEST_CASE("partial trace of product states returns the system factor") {
    auto rng = make_rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho_s = test::random_density(4, rng);
        const DensityMatrix rho_d = test::random_density(2, rng);
        const DensityMatrix joint(kron(rho_s.matrix(), rho_d.matrix()));
        const DensityMatrix traced = partial_trace_detector(joint);
        CHECK(max_abs(traced.matrix() - rho_s.matrix()) <= 1e-12);
    }
}

TEST_CASE("partial trace preserves the trace") {
    auto rng = make_rng(12);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix joint = test::random_density(8, rng);
        const ComplexMatrix traced = partial_trace_detector(joint.matrix());
        CHECK(std::abs(traced.trace() - joint.matrix().trace()) <= 1e-14);
    }
}

TEST_CASE("partial trace of an entangled system-detector state") {
    // (|B1>|↑> + |B2>|↓>)/sqrt(2) -> (|B1><B1| + |B2><B2|)/2 by direct
    // index summation.
    auto rng = make_rng(13);
    const auto basis = test::random_basis(rng);
    ComplexVector psi = ComplexVector::Zero(8);
    for (Eigen::Index s = 0; s < 4; ++s) {
        psi(2 * s) = basis.matrix()(s, 0) / std::numbers::sqrt2;     // system ⊗ |↑>
        psi(2 * s + 1) = basis.matrix()(s, 1) / std::numbers::sqrt2; // system ⊗ |↓>
    }
    const ComplexMatrix joint = psi * psi.adjoint();
    const ComplexMatrix expected = (basis.projector(0) + basis.projector(1)) / 2.0;
    CHECK(max_abs(partial_trace_detector(joint) - expected) <= 1e-14);
}

TEST_CASE("partial trace rejects wrong dimensions") {
    CHECK_THROWS_AS(partial_trace_detector(identity(4)), std::invalid_argument);
}

TEST_CASE("herm_eig identity and pauli_z") {
    const EigenSystem id = herm_eig(identity(4));
    for (int k = 0; k < 4; ++k) CHECK(id.values(k) == doctest::Approx(1.0).epsilon(1e-14));

    const EigenSystem z = herm_eig(pauli_z());
    CHECK(z.values(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(z.values(1) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
    auto rng = make_rng(21);
    for (Eigen::Index n : {4, 8}) {
        for (int rep = 0; rep < 10; ++rep) {
            const ComplexMatrix m = test::random_hermitian(n, rng);
            const EigenSystem es = herm_eig(m);
            ComplexMatrix recon = ComplexMatrix::Zero(n, n);
            for (Eigen::Index k = 0; k < n; ++k) {
                recon += es.values(k) * es.vectors.col(k) * es.vectors.col(k).adjoint();
            }
            CHECK(max_abs(m - recon) <= 1e-10);
            CHECK(max_abs(es.vectors.adjoint() * es.vectors - identity(n)) <= 1e-10);
            for (Eigen::Index k = 1; k < n; ++k) CHECK(es.values(k - 1) >= es.values(k));
        }
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(herm_eig(m), std::invalid_argument);
}

TEST_CASE("sqrt_psd basics") {
    CHECK(max_abs(sqrt_psd(identity(3)) - identity(3)) <= 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(0, 0) = 2.0;
    e(1, 1) = 3.0;
    CHECK(max_abs(sqrt_psd(d) - e) <= 1e-12);

    auto rng = make_rng(31);
    const ComplexMatrix p = test::random_pure(4, rng).projector();
    CHECK(max_abs(sqrt_psd(p) - p) <= 1e-12);
}

TEST_CASE("sqrt_psd squares back to the input") {
    auto rng = make_rng(32);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = test::random_complex(4, 4, rng);
        const ComplexMatrix m = a * a.adjoint();
        const ComplexMatrix s = sqrt_psd(m);
        CHECK(max_abs(s * s - m) <= 1e-9 * std::max(1.0, max_abs(m)));
        CHECK(hermiticity_error(s) <= 1e-12);
    }
}

TEST_CASE("sqrt_psd rejects indefinite matrices") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1e-6;
    CHECK_THROWS_AS(sqrt_psd(m), ValidationError);
}

TEST_CASE("expm of zero generator is the identity") {
    CHECK(max_abs(expm_hermitian_generator(ComplexMatrix::Zero(4, 4), 1.7) - identity(4)) <=
          1e-14);
}

TEST_CASE("expm rotates a two-level block by the coupling phase") {
    auto rng = make_rng(41);
    const auto basis = test::random_basis(rng);
    const ComplexVector a = basis.matrix().col(0);
    const ComplexVector b = basis.matrix().col(1);
    const double coupling = 0.8, tau = 0.3;
    const ComplexMatrix h =
        coupling * (a * b.adjoint() + b * a.adjoint());
    const ComplexMatrix u = expm_hermitian_generator(h, tau);
    const Complex aa = (a.adjoint() * u * a)(0);
    const Complex ba = (b.adjoint() * u * a)(0);
    CHECK(std::abs(aa - std::cos(coupling * tau)) <= 1e-12);
    CHECK(std::abs(ba - Complex(0.0, -std::sin(coupling * tau))) <= 1e-12);
}

TEST_CASE("expm of pauli_x over pi is minus identity") {
    const ComplexMatrix u = expm_hermitian_generator(pauli_x(), std::numbers::pi);
    CHECK(max_abs(u + identity(2)) <= 1e-12);
}

TEST_CASE("expm output is unitary") {
    auto rng = make_rng(42);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix h = test::random_hermitian(8, rng);
        const ComplexMatrix u = expm_hermitian_generator(h, 0.37 * (rep + 1));
        CHECK(max_abs(u.adjoint() * u - identity(8)) <= 1e-10);
    }
}

TEST_CASE("vectorize round trip and zero") {
    CHECK(vectorize(ComplexMatrix::Zero(4, 4)).norm() == 0.0);

    auto rng = make_rng(51);
    const ComplexMatrix m = test::random_complex(4, 4, rng);
    CHECK(max_abs(devectorize(vectorize(m)) - m) == 0.0);
}

TEST_CASE("vectorization identity vec(A rho B) = (B^T kron A) vec(rho)") {
    auto rng = make_rng(52);
    for (int rep = 0; rep < 10; ++rep) {
        const ComplexMatrix a = test::random_complex(4, 4, rng);
        const ComplexMatrix rho = test::random_complex(4, 4, rng);
        const ComplexMatrix b = test::random_complex(4, 4, rng);
        const ComplexVector lhs = vectorize(a * rho * b);
        const ComplexVector rhs = kron(b.transpose(), a) * vectorize(rho);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("vectorize dimension checks") {
    CHECK_THROWS_AS(vectorize(identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(devectorize(ComplexVector::Zero(9)), std::invalid_argument);
}

TEST_CASE("density matrix validation names the failed check") {
    const ComplexMatrix ok = identity(4) / 4.0;
    CHECK_NOTHROW(DensityMatrix{ok});

    CHECK_THROWS_WITH_AS(DensityMatrix{ComplexMatrix(identity(4) / 5.0)},
                         doctest::Contains("trace"), ValidationError);

    ComplexMatrix nonherm = identity(4) / 4.0;
    nonherm(0, 1) = Complex(0.0, 1e-3);
    CHECK_THROWS_WITH_AS(DensityMatrix{nonherm}, doctest::Contains("hermiticity"),
                         ValidationError);

    ComplexMatrix indefinite = ComplexMatrix::Zero(4, 4);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_WITH_AS(DensityMatrix{indefinite}, doctest::Contains("psd"), ValidationError);
}

TEST_CASE("pure state norm validation") {
    ComplexVector v = ComplexVector::Zero(4);
    v(0) = 0.9;
    CHECK_THROWS_AS(PureState{v}, ValidationError);
    v(0) = 1.0;
    CHECK_NOTHROW(PureState{v});
}
