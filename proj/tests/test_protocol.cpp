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

#include <algorithm>
#include <cmath>

#include "steerlab/metrics.hpp"
#include "steerlab/protocol.hpp"
#include "test_util.hpp"

using namespace steerlab;
using namespace steerlab::linalg;
using namespace steerlab::protocol;
using steerlab::test::make_rng;

namespace {

DensityMatrix mix_from(const OrthonormalBasis& basis, const Eigen::Vector4d& p) {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) rho += p(i) * basis.projector(i);
    return DensityMatrix(std::move(rho));
}

} // namespace

TEST_CASE("diagonalize_target reconstructs the input, degenerate spectra included") {
    auto rng = make_rng(101);
    for (int rep = 0; rep < 12; ++rep) {
        const auto basis = test::random_basis(rng);
        Eigen::Vector4d p = test::random_simplex(rng);
        if (rep % 3 == 0) { // force a degenerate pair
            p(1) = p(0);
            p /= p.sum();
        }
        const DensityMatrix rho = mix_from(basis, p);
        const TargetSpec spec = diagonalize_target(rho);
        CHECK(max_abs(spec.state().matrix() - rho.matrix()) <= 1e-10);
        for (int i = 1; i < 4; ++i) CHECK(spec.probabilities(i - 1) >= spec.probabilities(i));
    }
}

TEST_CASE("diagonalize_target on the example family state") {
    const auto spec = diagonalize_target(metrics::family_state(metrics::FamilyParams(0.5, 0.5)));
    // Eigenvalues of the alpha = beta = 1/2 state, sorted descending.
    CHECK(spec.probabilities(0) == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(spec.probabilities(1) == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(spec.probabilities(2) == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(spec.probabilities(3) == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("diagonalize_target trivial cases") {
    auto rng = make_rng(102);
    const auto basis = test::random_basis(rng);
    const auto pure = diagonalize_target(DensityMatrix(basis.projector(0)));
    CHECK(pure.probabilities(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pure.probabilities.tail<3>().cwiseAbs().maxCoeff() <= 1e-12);

    const auto mixed = diagonalize_target(DensityMatrix::maximally_mixed(4));
    for (int i = 0; i < 4; ++i) {
        CHECK(mixed.probabilities(i) == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("assign_couplings implements g_i = gbar p_i") {
    const auto spec = metrics::family_target_spec(metrics::FamilyParams(0.5, 0.5));
    const auto schedule = assign_couplings(spec, 1.0, 0.01);
    CHECK(schedule.rates()(0) == doctest::Approx(0.3125).epsilon(1e-14));
    CHECK(schedule.rates()(1) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(schedule.rates()(2) == doctest::Approx(0.3125).epsilon(1e-14));
    CHECK(schedule.rates()(3) == doctest::Approx(0.3125).epsilon(1e-14));
    CHECK(schedule.gbar() == doctest::Approx(1.0).epsilon(1e-14));

    // Pure target: only detector 0 active.
    auto rng = make_rng(111);
    Eigen::Vector4d p_pure(1.0, 0.0, 0.0, 0.0);
    const auto pure = assign_couplings(TargetSpec(test::random_basis(rng), p_pure), 2.0, 0.05);
    int active = 0;
    for (const auto& step : pure.steps()) {
        if (step.coupling > 0.0) {
            ++active;
            CHECK(step.target_index == 0);
        }
    }
    CHECK(active == 3);
}

TEST_CASE("assign_couplings emits the fixed 12-step cycle") {
    auto rng = make_rng(112);
    const auto spec = TargetSpec(test::random_basis(rng), test::random_simplex(rng));
    const auto schedule = assign_couplings(spec, 1.5, 0.02);
    REQUIRE(schedule.steps().size() == 12);
    std::size_t s = 0;
    for (int target = 0; target < 4; ++target) {
        for (int source = 0; source < 4; ++source) {
            if (source == target) continue;
            CHECK(schedule.steps()[s].target_index == target);
            CHECK(schedule.steps()[s].source_index == source);
            ++s;
        }
    }
    // Rate round trip through the emitted couplings.
    for (const auto& step : schedule.steps()) {
        const double g = step.coupling * step.coupling * schedule.tau() / 12.0;
        CHECK(std::abs(g - schedule.rates()(step.target_index)) <= 1e-12);
    }
    CHECK(schedule.rates().sum() == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("assign_couplings rejects nonpositive parameters") {
    auto rng = make_rng(113);
    const TargetSpec spec(test::random_basis(rng), Eigen::Vector4d(0.25, 0.25, 0.25, 0.25));
    CHECK_THROWS_AS(assign_couplings(spec, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(assign_couplings(spec, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("interaction_hamiltonian structure") {
    auto rng = make_rng(121);
    const auto basis = test::random_basis(rng);
    const MeasurementStep step{2, 0, 0.7, 0.05};
    const ComplexMatrix h = interaction_hamiltonian(step, basis);
    CHECK(h.rows() == 8);
    CHECK(hermiticity_error(h) <= 1e-14);

    // Exactly the two conjugate blocks populated: projecting onto the
    // complement of the {target, source} system subspace annihilates h.
    ComplexMatrix complement = ComplexMatrix::Zero(4, 4);
    complement += basis.projector(1);
    complement += basis.projector(3);
    const ComplexMatrix mask = kron(complement, identity(2));
    CHECK(max_abs(mask * h) <= 1e-13);
    CHECK(max_abs(h * mask) <= 1e-13);

    const MeasurementStep off{2, 0, 0.0, 0.05};
    CHECK(max_abs(interaction_hamiltonian(off, basis)) == 0.0);
}

TEST_CASE("interaction Hamiltonians leave the target dark") {
    auto rng = make_rng(122);
    const auto spec = TargetSpec(test::random_basis(rng), test::random_simplex(rng));
    const auto schedule = assign_couplings(spec, 1.0, 0.01);
    const ComplexMatrix up = sigma_plus() * sigma_minus();
    for (const auto& step : schedule.steps()) {
        const ComplexMatrix h = interaction_hamiltonian(step, schedule.basis());
        const ComplexMatrix dark = kron(schedule.basis().projector(step.target_index), up);
        CHECK(max_abs(h * dark - dark * h) <= 1e-12);
    }
}

TEST_CASE("jump operators") {
    auto rng = make_rng(131);
    const auto basis = test::random_basis(rng);
    for (int target = 0; target < 4; ++target) {
        const auto ops = jump_operators(basis, target);
        CHECK(max_abs(ops[target]) == 0.0);
        for (int j = 0; j < 4; ++j) {
            if (j == target) continue;
            CHECK(ops[j].norm() == doctest::Approx(1.0).epsilon(1e-12));
            // L† L = |B_j><B_j| by outer-product algebra.
            CHECK(max_abs(ops[j].adjoint() * ops[j] - basis.projector(j)) <= 1e-13);
            // Rank 1: second singular value vanishes.
            Eigen::JacobiSVD<ComplexMatrix> svd(ops[j]);
            CHECK(svd.singularValues()(1) <= 1e-13);
        }
    }
}

TEST_CASE("weak-measurement phase is reported, not enforced") {
    auto rng = make_rng(141);
    const auto spec = TargetSpec(test::random_basis(rng), Eigen::Vector4d(0.25, 0.25, 0.25, 0.25));
    const auto strong = assign_couplings(spec, 1.0, 10.0); // J tau = sqrt(12 g tau) >> 0.3
    CHECK(strong.max_coupling_phase() > kWeakRegimeJtau);
    const auto weak = assign_couplings(spec, 1.0, 1e-4);
    CHECK(weak.max_coupling_phase() <= kWeakRegimeJtau);
}

TEST_CASE("target spec validation") {
    auto rng = make_rng(151);
    const auto basis = test::random_basis(rng);
    CHECK_THROWS_AS(TargetSpec(basis, Eigen::Vector4d(0.5, 0.5, 0.5, -0.5)), ValidationError);
    CHECK_THROWS_AS(TargetSpec(basis, Eigen::Vector4d(0.3, 0.3, 0.3, 0.3)), ValidationError);
}

TEST_CASE("orthonormal basis validation") {
    ComplexMatrix columns = ComplexMatrix::Identity(4, 4);
    columns(0, 1) = 0.1; // breaks orthogonality
    CHECK_THROWS_AS(OrthonormalBasis{columns}, ValidationError);
}
