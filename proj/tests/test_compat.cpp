// Copyright 2026 The belltensor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "belltensor/compat.hpp"
#include "belltensor/error.hpp"
#include "belltensor/sampling.hpp"
#include "doctest.h"

using namespace belltensor;

namespace {

HermitianMatrix bloch(const RVector &v) { return v(0) * sigma_x() + v(1) * sigma_y() + v(2) * sigma_z(); }

HermitianMatrix diag(double a, double b) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return HermitianMatrix(m);
}

MeasurementTuple tuple_of(std::vector<HermitianMatrix> obs) { return MeasurementTuple(std::move(obs)); }

MeasurementTuple pair(double x, double y) { return tuple_of({x * sigma_x(), y * sigma_y()}); }

// Unbiased qubit pairs a·σ, b·σ are compatible iff |a+b| + |a−b| ≤ 2.
double unbiased_pair_norm(const RVector &a, const RVector &b) { return ((a + b).norm() + (a - b).norm()) / 2.0; }

RVector random_ball_vector(Rng &rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RVector v(3);
    for (auto &c : v) c = gauss(rng);
    return v.normalized() * unit(rng);
}

void check_povm(const JointPovm &povm, const MeasurementTuple &a) {
    HermitianMatrix total = HermitianMatrix::zero(a.dim());
    for (const auto &[eps, e] : povm.elements()) {
        CHECK(lambda_min(e) >= -1e-9);
        total += e;
    }
    CHECK((total.matrix() - CMatrix::Identity(a.dim(), a.dim())).cwiseAbs().maxCoeff() <= 1e-8);
    for (int x = 0; x < a.n(); ++x) {
        const HermitianMatrix target = 0.5 * (HermitianMatrix::identity(a.dim()) + a[x].matrix());
        CHECK((povm.marginal_effect(x).matrix() - target.matrix()).cwiseAbs().maxCoeff() <= 1e-7);
    }
}

}  // namespace

TEST_CASE("sign vectors") {
    const auto all = SignVector::all(3);
    REQUIRE(all.size() == 8);
    for (const auto &s : all) CHECK(SignVector::from_key(s.key()) == s);
    const auto s = SignVector::from_key("+-+");
    CHECK(s[0] == 1);
    CHECK(s[1] == -1);
    CHECK(s[2] == 1);
    CHECK_THROWS_AS(SignVector::from_key(""), ValidationError);
    CHECK_THROWS_AS(SignVector::from_key("+x"), ValidationError);
}

TEST_CASE("epsilon SDP pair examples") {
    const HermitianMatrix id = HermitianMatrix::identity(2);
    const HermitianMatrix ket0 = diag(1, 0);
    CHECK(std::abs(epsilon_star_primal(ket0, ket0)) <= 1e-7);
    CHECK(std::abs(epsilon_star_dual(ket0, ket0)) <= 1e-7);

    const HermitianMatrix px = 0.5 * (id + sigma_x()), py = 0.5 * (id + sigma_y());
    const double mub = (std::sqrt(2.0) - 1.0) / 2.0;
    CHECK(std::abs(epsilon_star_primal(px, py) - mub) <= 1e-6);
    CHECK(std::abs(epsilon_star_dual(px, py) - mub) <= 1e-6);

    CHECK(epsilon_star_primal(0.5 * id, 0.5 * id) <= 1e-7);
    CHECK(epsilon_star_dual(0.5 * id, 0.5 * id) <= 1e-7);

    CHECK_THROWS_AS(epsilon_star_primal(2.0 * id, ket0), ValidationError);
    CHECK_THROWS_AS(epsilon_star_dual(ket0, HermitianMatrix::identity(3)), ShapeError);
}

TEST_CASE("strong duality and identical effects") {
    Rng rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        const HermitianMatrix p = random_effect(2, rng), q = random_effect(2, rng);
        CHECK(std::abs(epsilon_star_primal(p, q) - epsilon_star_dual(p, q)) <= 1e-6);
        CHECK(epsilon_star_dual(p, p) <= 1e-7);
    }
}

TEST_CASE("compatibility norm examples") {
    for (double y : {-1.0, -0.4, 0.0, 0.7, 1.0}) {
        const auto a = tuple_of({sigma_x(), y * sigma_y()});
        CHECK(std::abs(compatibility_norm(a) - std::sqrt(1 + y * y)) <= 1e-6);
    }
    const auto triple = pauli_tuple(0.3, 0.5, 0.8);
    CHECK(std::abs(compatibility_norm(triple) - std::sqrt(0.09 + 0.25 + 0.64)) <= 1e-6);

    const auto commuting = tuple_of({diag(0.5, -0.3), diag(0.9, 0.1), diag(-0.2, 0.0)});
    CHECK(std::abs(compatibility_norm(commuting) - 0.9) <= 1e-7);

    Rng rng(62);
    for (int d = 1; d <= 4; ++d) {
        const HermitianMatrix h = random_hermitian(d, rng);
        CHECK(std::abs(compatibility_norm(tuple_of({h})) - operator_norm(h)) <= 1e-7);
    }
    CHECK(compatibility_norm(MeasurementTuple::zero(3, 2)) <= 1e-8);
    CHECK_THROWS_AS(compatibility_norm(random_tuple(5, 2, rng)), SizeError);
}

TEST_CASE("unbiased qubit pairs") {
    Rng rng(63);
    for (int trial = 0; trial < 40; ++trial) {
        const RVector a = random_ball_vector(rng), b = random_ball_vector(rng);
        const auto pair = tuple_of({bloch(a), bloch(b)});
        CHECK(std::abs(compatibility_norm(pair) - unbiased_pair_norm(a, b)) <= 1e-6);
    }
}

TEST_CASE("noise thresholds") {
    CHECK(std::abs(gamma_threshold(pair(1, 1)) - 1.0 / std::sqrt(2.0)) <= 1e-6);
    CHECK(std::abs(gamma_threshold(pauli_tuple(1, 1, 1)) - 1.0 / std::sqrt(3.0)) <= 1e-6);
    CHECK(std::abs(gamma_threshold(tuple_of({sigma_z()})) - 1.0) <= 1e-7);
    CHECK(std::abs(gamma_threshold_pair(pair(1, 1)) - 1.0 / std::sqrt(2.0)) <= 1e-5);
    CHECK_THROWS_AS(gamma_threshold(MeasurementTuple::zero(2, 2)), DegenerateError);
    CHECK_THROWS_AS(gamma_threshold_pair(MeasurementTuple::zero(2, 2)), DegenerateError);
    CHECK_THROWS_AS(gamma_threshold_pair(pauli_tuple(1, 1, 1)), ShapeError);

    Rng rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_tuple(2, 2, rng);
        CHECK(std::abs(gamma_threshold(a) - gamma_threshold_pair(a)) <= 1e-5);
        const double g = gamma_threshold(a);
        CHECK(is_compatible(add_noise(a, std::min(1.0, g * (1 - 1e-4)))).compatible);
        if (g < 0.99) CHECK_FALSE(is_compatible(add_noise(a, g * 1.01)).compatible);
    }
}

TEST_CASE("compatibility decisions and certificates") {
    const auto half = pair(0.5, 0.5);
    const auto v = is_compatible(half);
    CHECK(v.compatible);
    CHECK(std::abs(v.norm - std::sqrt(2.0) / 2.0) <= 1e-6);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->n() == 2);
    CHECK(v.certificate->elements().size() == 4);
    check_povm(*v.certificate, half);

    const auto sharp = is_compatible(pair(1, 1));
    CHECK_FALSE(sharp.compatible);
    CHECK_FALSE(sharp.certificate.has_value());

    const auto commuting = tuple_of({sigma_z(), diag(1, 1), diag(-1, 1)});
    const auto c = is_compatible(commuting);
    CHECK(c.compatible);
    REQUIRE(c.certificate.has_value());
    check_povm(*c.certificate, commuting);

    CHECK_THROWS_AS(is_compatible(pair(1.5, 0)), ValidationError);

    Rng rng(65);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_tuple(2 + trial % 3, 2 + trial % 2, rng);
        const auto verdict = is_compatible(a);
        CHECK(verdict.compatible == (compatibility_norm(a) <= 1.0 + kCompatibilitySlack));
        if (verdict.certificate) check_povm(*verdict.certificate, a);
    }
}

TEST_CASE("joint POVMs from explicit blocks") {
    for (int n = 1; n <= 3; ++n) {
        const auto zero = MeasurementTuple::zero(n, 2);
        std::map<SignVector, HermitianMatrix> uniform;
        for (const auto &s : SignVector::all(n)) {
            uniform.emplace(s, (1.0 / (1 << n)) * HermitianMatrix::identity(2));
        }
        const auto povm = joint_povm_from_decomposition(zero, uniform);
        check_povm(povm, zero);

        auto broken = uniform;
        broken.begin()->second = 2.0 * broken.begin()->second;
        CHECK_THROWS_AS(joint_povm_from_decomposition(zero, broken), CertificateError);
    }

    std::map<SignVector, HermitianMatrix> uniform;
    for (const auto &s : SignVector::all(2)) uniform.emplace(s, 0.25 * HermitianMatrix::identity(2));
    try {
        joint_povm_from_decomposition(pair(0.5, 0), uniform);
        FAIL("expected a certificate error");
    } catch (const CertificateError &e) {
        REQUIRE(e.residuals().size() == 2);
        CHECK(e.residuals()[0] == doctest::Approx(0.25));
        CHECK(e.residuals()[1] == doctest::Approx(0.0));
    }
    uniform.erase(uniform.begin());
    CHECK_THROWS_AS(joint_povm_from_decomposition(MeasurementTuple::zero(2, 2), uniform), CertificateError);
}

TEST_CASE("norm properties") {
    Rng rng(66);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        const Eigen::Index d = 2 + trial % 2;
        const auto a = random_tuple(n, d, rng), b = random_tuple(n, d, rng);
        const double na = compatibility_norm(a), nb = compatibility_norm(b);
        const double eta = unit(rng);
        CHECK(std::abs(compatibility_norm(a.scaled(eta)) - eta * na) <= 1e-6);
        CHECK(std::abs(compatibility_norm(a.scaled(-1.0)) - na) <= 1e-6);
        CHECK(compatibility_norm(a + b) <= na + nb + 1e-6);
        CHECK(a.injective_norm() <= na + 1e-7);
    }
}
