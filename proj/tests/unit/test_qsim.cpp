// Copyright 2026 The vqcshield Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "vqcshield/error.hpp"
#include "vqcshield/qsim.hpp"

using namespace vqcshield;
using namespace vqcshield::qsim;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

StateVector basis_state(std::size_t n, std::size_t index) {
    std::vector<Complex> a(std::size_t{1} << n, 0.0);
    a[index] = 1.0;
    return StateVector(n, a);
}

void check_amplitudes(const StateVector &s, const oracle::Vec &v, double tol) {
    REQUIRE(static_cast<Eigen::Index>(s.size()) == v.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(s[i] - v(static_cast<Eigen::Index>(i))) < tol);
    }
}

GateOp random_gate(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> ang(-pi, pi);
    const std::size_t q = rng() % n;
    switch (rng() % (n > 1 ? 6 : 5)) {
    case 0:
        return GateOp::h(q);
    case 1:
        return GateOp::rx(q, ang(rng));
    case 2:
        return GateOp::ry(q, ang(rng));
    case 3:
        return GateOp::rz(q, ang(rng));
    case 4:
        return GateOp::u3(q, ang(rng), ang(rng), ang(rng));
    default: {
        std::size_t b = rng() % n;
        while (b == q) {
            b = rng() % n;
        }
        return GateOp::cz(q, b);
    }
    }
}

} // namespace

TEST_CASE("apply_gate examples", "[qsim]") {
    SECTION("H|0> = |+>") {
        const auto s = apply_gate(StateVector(1), GateOp::h(0));
        CHECK_THAT(s[0].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
        CHECK_THAT(s[1].real(), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    }
    SECTION("CZ|11> = -|11>") {
        const auto s = apply_gate(basis_state(2, 3), GateOp::cz(0, 1));
        CHECK(s[3] == Complex(-1, 0));
    }
    SECTION("RY(2 acos 0.6)|0> = 0.6|0> + 0.8|1>") {
        const auto s = apply_gate(StateVector(1), GateOp::ry(0, 2 * std::acos(0.6)));
        CHECK_THAT(s[0].real(), WithinAbs(0.6, 1e-14));
        CHECK_THAT(s[1].real(), WithinAbs(0.8, 1e-14));
    }
    SECTION("qubit 0 is the most significant bit") {
        const auto s = apply_gate(StateVector(2), GateOp::rx(0, pi));
        CHECK(std::abs(s[2]) > 0.999);
    }
}

TEST_CASE("apply_gate errors", "[qsim]") {
    CHECK_THROWS_AS(apply_gate(StateVector(2), GateOp::h(2)), DimensionError);
    CHECK_THROWS_AS(apply_gate(StateVector(2), GateOp::cz(1, 1)), Error);
    CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), DimensionError);
}

TEST_CASE("run_circuit examples", "[qsim]") {
    SECTION("empty circuit") {
        const auto s = run_circuit(Circuit(2), {});
        CHECK(s[0] == Complex(1, 0));
    }
    SECTION("two-qubit cluster state") {
        Circuit c(2);
        c.add(GateOp::h(0)).add(GateOp::h(1)).add(GateOp::cz(0, 1));
        const auto s = run_circuit(c, {});
        const std::array<double, 4> expect{0.5, 0.5, 0.5, -0.5};
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK_THAT(s[i].real(), WithinAbs(expect[i], 1e-15));
            CHECK_THAT(s[i].imag(), WithinAbs(0.0, 1e-15));
        }
    }
    SECTION("parameter-count mismatch") {
        Circuit c(1);
        c.add_parameterized(GateOp::ry(0, 0.0));
        const std::vector<double> theta{0.1, 0.2};
        CHECK_THROWS_AS(run_circuit(c, theta), DimensionError);
    }
}

TEST_CASE("expectation examples", "[qsim]") {
    CHECK(expectation(StateVector(1), PauliString::parse("Z")) == 1.0);
    CHECK_THAT(expectation(apply_gate(StateVector(1), GateOp::h(0)), PauliString::parse("Z")),
               WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(expectation(StateVector(2), PauliString::parse("Z")), DimensionError);

    // <ZZZ> on the linear cluster state, against an 8x8 oracle
    Circuit c(3);
    c.add(GateOp::h(0)).add(GateOp::h(1)).add(GateOp::h(2));
    c.add(GateOp::cz(0, 1)).add(GateOp::cz(1, 2));
    const auto s = run_circuit(c, {});
    oracle::Mat u = oracle::ladder(3);
    for (std::size_t q = 0; q < 3; ++q) {
        u = u * oracle::embed(oracle::hadamard(), q, 3);
    }
    const oracle::Vec psi = u * oracle::zero_state(3);
    const double expect = oracle::expval(psi, oracle::pauli("ZZZ"));
    CHECK_THAT(expectation(s, PauliString::parse("ZZZ")), WithinAbs(expect, 1e-14));
    PauliSum sum(3);
    sum.add(0.5, PauliString::parse("ZZZ"));
    sum.add(-2.0, PauliString::parse("XZI"));
    const double expect_sum = 0.5 * expect - 2.0 * oracle::expval(psi, oracle::pauli("XZI"));
    CHECK_THAT(expectation(s, sum), WithinAbs(expect_sum, 1e-14));
}

TEST_CASE("Pauli rotations follow exp(-i theta P / 2)", "[qsim]") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (const char *label : {"X", "YZ", "ZXY", "XIZ"}) {
        const auto p = PauliString::parse(label);
        const std::size_t n = p.num_qubits();
        const double theta = ang(rng);
        Circuit c(n);
        for (std::size_t q = 0; q < n; ++q) {
            c.add(GateOp::u3(q, ang(rng), ang(rng), ang(rng)));
        }
        const auto in = run_circuit(c, {});
        const auto out = apply_gate(in, GateOp::pauli_rotation(p, theta));
        const oracle::Mat gen = oracle::pauli(label);
        const oracle::Mat u =
            std::cos(theta / 2) * oracle::Mat::Identity(gen.rows(), gen.cols()) -
            oracle::C(0, 1) * std::sin(theta / 2) * gen;
        oracle::Vec v(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) {
            v(static_cast<Eigen::Index>(i)) = in[i];
        }
        check_amplitudes(out, u * v, 1e-12);
    }
}

TEST_CASE("norm preservation on random circuits", "[qsim][property]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        Circuit c(n);
        const std::size_t len = 1 + rng() % 50;
        for (std::size_t k = 0; k < len; ++k) {
            c.add(random_gate(rng, n));
        }
        CHECK_THAT(run_circuit(c, {}).norm_squared(), WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("gate followed by its inverse is the identity", "[qsim][property]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3;
        Circuit prep(n);
        for (std::size_t q = 0; q < n; ++q) {
            prep.add(GateOp::u3(q, ang(rng), ang(rng), ang(rng)));
        }
        const auto in = run_circuit(prep, {});
        const auto g = random_gate(rng, n);
        GateOp inv = g;
        switch (g.kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            inv.angles[0] = -g.angles[0];
            break;
        case GateKind::U3:
            // U3(t, p, l)^-1 = U3(-t, -l, -p)
            inv.angles = {-g.angles[0], -g.angles[2], -g.angles[1]};
            break;
        default:
            break;
        }
        const auto out = apply_gate(apply_gate(in, g), inv);
        for (std::size_t i = 0; i < in.size(); ++i) {
            CHECK(std::abs(out[i] - in[i]) < 1e-10);
        }
    }
}

TEST_CASE("single-qubit matrices are unitary", "[qsim][property]") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (auto kind : {GateKind::H, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::U3}) {
        const auto m = single_qubit_matrix(kind, {ang(rng), ang(rng), ang(rng)});
        const auto p = multiply(adjoint(m), m);
        CHECK(std::abs(p[0] - 1.0) < 1e-12);
        CHECK(std::abs(p[1]) < 1e-12);
        CHECK(std::abs(p[2]) < 1e-12);
        CHECK(std::abs(p[3] - 1.0) < 1e-12);
    }
}

TEST_CASE("run_circuit agrees with dense matrix products", "[qsim][property]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(-pi, pi);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        Circuit c(n);
        oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
        for (int k = 0; k < 20; ++k) {
            const std::size_t q = rng() % n;
            const double a = ang(rng);
            switch (rng() % 4) {
            case 0:
                c.add(GateOp::h(q));
                u = oracle::embed(oracle::hadamard(), q, n) * u;
                break;
            case 1:
                c.add(GateOp::rx(q, a));
                u = oracle::embed(oracle::rot('X', a), q, n) * u;
                break;
            case 2:
                c.add(GateOp::ry(q, a));
                u = oracle::embed(oracle::rot('Y', a), q, n) * u;
                break;
            default:
                if (n > 1) {
                    const std::size_t b = (q + 1) % n;
                    c.add(GateOp::cz(q, b));
                    u = oracle::cz(q, b, n) * u;
                } else {
                    c.add(GateOp::rz(q, a));
                    u = oracle::embed(oracle::rot('Z', a), q, n) * u;
                }
            }
        }
        check_amplitudes(run_circuit(c, {}), u * oracle::zero_state(n), 1e-10);
        CHECK((circuit_unitary(c, {}) - u).norm() < 1e-10);
    }
}
