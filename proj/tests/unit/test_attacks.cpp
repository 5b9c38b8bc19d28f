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

#include <numbers>
#include <random>

#include "oracle.hpp"
#include "vqcshield/attacks.hpp"
#include "vqcshield/error.hpp"

using namespace vqcshield;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double pi = std::numbers::pi;

Model baseline() {
    return Model(make_model_config(3, EncoderKind::ProductRX, 2, 2, DlsMode::off(), 2));
}

Model defended(double delta = 0.3) {
    return Model(
        make_model_config(3, EncoderKind::TCGE, 2, 2, DlsMode::perturbative(delta), 2, 5));
}

std::vector<double> random_vec(std::mt19937_64 &rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

} // namespace

TEST_CASE("omega for a single-qubit RY ansatz", "[attacks]") {
    // y = Tr(Z RY(t) B RY(t)^dag) / 2, B in {X, Y, Z}:
    //   X -> -sin t, Y -> 0, Z -> cos t; derivatives -cos t, 0, -sin t.
    const Model m(make_model_config(1, EncoderKind::ProductRX, 1, 1, DlsMode::off(), 2));
    const auto abs = absorb_fixed_gates(m.ansatz());
    ModelAlgebra alg{abs, lie_closure(abs.generators),
                     DlaBasis(1, {PauliString::parse("X"), PauliString::parse("Y"),
                                  PauliString::parse("Z")})};
    alg.basis.set_observable(PauliSum(PauliString::parse("Z")));
    for (double t : {0.0, 0.4, -2.0}) {
        const auto om = build_omega(m, alg, std::vector<double>{t});
        REQUIRE(om.omega.rows() == 1);
        REQUIRE(om.omega.cols() == 3);

        // dense 2x2 conjugation oracle
        auto f = [](double th, const char *b) {
            const oracle::Mat u = oracle::rot('Y', th);
            return (oracle::pauli("Z") * u * oracle::pauli(b) * u.adjoint()).trace().real() / 2;
        };
        const double h = 1e-6;
        const char *bs[] = {"X", "Y", "Z"};
        for (int a = 0; a < 3; ++a) {
            const double d = (f(t + h, bs[a]) - f(t - h, bs[a])) / (2 * h);
            CHECK_THAT(om.omega(0, a), WithinAbs(d, 1e-8));
        }
        CHECK_THAT(om.omega(0, 0), WithinAbs(-std::cos(t), 1e-12));
        CHECK_THAT(om.omega(0, 2), WithinAbs(-std::sin(t), 1e-12));
        CHECK(om.lasa_residual == 0.0);
    }
}

TEST_CASE("omega rejects a basis that is not closed", "[attacks]") {
    const auto m = baseline();
    auto alg = m.algebra();
    alg.basis = DlaBasis(3, {PauliString::parse("ZZZ")});
    CHECK_THROWS_AS(build_omega(m, alg, std::vector<double>(6, 0.1)), ClosureError);
}

TEST_CASE("omega times snapshot reproduces the output gradient", "[attacks][property]") {
    std::mt19937_64 rng(61);
    for (const auto &m : {baseline(), defended()}) {
        const auto alg = m.algebra();
        for (int trial = 0; trial < 10; ++trial) {
            const auto theta = random_vec(rng, 6, -pi, pi);
            const auto x = random_vec(rng, 2, 0.0, pi);
            const auto state = m.encode(x);
            const auto om = build_omega(m, alg, theta);
            const Eigen::VectorXd pred = om.omega * snapshot(state, alg.basis).values;
            const auto grad = m.output_gradient(state, theta, m.observable());
            for (std::size_t k = 0; k < grad.size(); ++k) {
                CHECK_THAT(pred(static_cast<Eigen::Index>(k)), WithinAbs(grad[k], 1e-8));
            }
        }
    }
}

TEST_CASE("snapshot recovery", "[attacks]") {
    std::mt19937_64 rng(67);
    const auto m = baseline();
    const auto alg = m.algebra();
    const auto x = random_vec(rng, 2, 0.0, pi);
    const auto state = m.encode(x);
    const auto truth = snapshot(state, alg.basis);

    SECTION("static model, three probes recovers the snapshot") {
        RecoverySystem sys(alg.basis.dim());
        for (int p = 0; p < 3; ++p) {
            const auto theta = random_vec(rng, 6, -pi, pi);
            sys.add_observation(build_omega(m, alg, theta),
                                m.output_gradient(state, theta, m.observable()), theta);
        }
        CHECK(sys.rows() == 18);
        const auto r = snapshot_recovery(sys);
        CHECK(r.rank == 18);
        CHECK_FALSE(r.rank_deficient);
        CHECK(r.consistent());
        CHECK((r.e_hat.values - truth.values).cwiseAbs().maxCoeff() < 1e-8);
    }
    SECTION("zero observations give a zero snapshot") {
        RecoverySystem sys(alg.basis.dim());
        for (int p = 0; p < 3; ++p) {
            const auto theta = random_vec(rng, 6, -pi, pi);
            sys.add_observation(build_omega(m, alg, theta), std::vector<double>(6, 0.0), theta);
        }
        CHECK(snapshot_recovery(sys).e_hat.values.isZero());
    }
    SECTION("one probe is rank deficient, minimum-norm") {
        RecoverySystem sys(alg.basis.dim());
        const auto theta = random_vec(rng, 6, -pi, pi);
        const auto om = build_omega(m, alg, theta);
        sys.add_observation(om, m.output_gradient(state, theta, m.observable()), theta);
        const auto r = snapshot_recovery(sys);
        CHECK(r.rank_deficient);
        CHECK(r.rank <= 6);
        // minimum norm: orthogonal to the null space
        const Eigen::MatrixXd pinv =
            om.omega.completeOrthogonalDecomposition().pseudoInverse();
        CHECK((r.e_hat.values - pinv * sys.rhs()).norm() < 1e-9);
    }
    SECTION("no rows") {
        CHECK_THROWS_AS(snapshot_recovery(RecoverySystem(18)), Error);
    }
    SECTION("mismatched block") {
        RecoverySystem sys(5);
        const auto theta = random_vec(rng, 6, -pi, pi);
        CHECK_THROWS_AS(
            sys.add_observation(build_omega(m, alg, theta), std::vector<double>(6), theta),
            DimensionError);
    }
}

TEST_CASE("scrambled gradients break the static recovery", "[attacks]") {
    std::mt19937_64 rng(71);
    const auto m = defended(0.3);
    const auto alg = m.algebra();
    const auto x = random_vec(rng, 2, 0.0, pi);
    const auto state = m.encode(x);
    const auto truth = snapshot(state, alg.basis);
    RecoverySystem sys(alg.basis.dim());
    for (std::size_t p = 0; p < 5; ++p) {
        const auto theta = random_vec(rng, 6, -pi, pi);
        const auto w = sample_scrambler(m.config(), p + 1, 99);
        sys.add_observation(build_omega(m, alg, theta),
                            m.output_gradient(state, theta, m.measured_observable(&w)), theta);
    }
    const auto r = snapshot_recovery(sys);
    CHECK_FALSE(r.consistent());
    const Eigen::VectorXd d = r.e_hat.values - truth.values;
    CHECK(d.squaredNorm() / d.size() >= 1e-4);

    // the adversary's assumption leaves part of W^dag O W outside the basis
    const auto w = sample_scrambler(m.config(), 1, 99);
    CHECK(build_omega(m, alg, std::vector<double>(6, 0.2), &w).lasa_residual > 1e-6);
}

TEST_CASE("snapshot inversion", "[attacks]") {
    const auto m = baseline();
    const auto basis = m.algebra().basis;
    const std::vector<double> x{1.2, 0.7};
    const auto leak = snapshot(m.encode(x), basis);

    SECTION("starting at the truth stays there") {
        const auto recs = snapshot_inversion(m, basis, leak, x, x, {20, 0.1, 1e-4});
        REQUIRE(recs.size() == 21);
        for (const auto &r : recs) {
            CHECK(r.inversion_loss < 1e-12);
        }
        CHECK(recs.front().inversion_loss == 0.0);
        CHECK(recs.front().mse_strong == 0.0);
    }
    SECTION("nearby start converges") {
        const std::vector<double> init{0.9, 0.3};
        const auto recs = snapshot_inversion(m, basis, leak, x, init, {200, 0.1, 1e-4});
        CHECK(recs.back().mse_strong < 1e-3);
        for (const auto &r : recs) {
            CHECK(r.mse_strong >= 0.0);
            CHECK(r.inversion_loss >= 0.0);
            CHECK(r.x_guess[0] >= 0.0);
            CHECK(r.x_guess[0] <= pi);
        }
    }
    SECTION("loss is the snapshot distance") {
        const std::vector<double> other{0.3, 2.0};
        const double expect = (snapshot(m.encode(other), basis).values - leak.values).squaredNorm();
        CHECK(inversion_loss(m, basis, leak, other) == expect);
    }
    SECTION("length checks") {
        CHECK_THROWS_AS(inversion_loss(m, basis, SnapshotVector{Eigen::VectorXd::Zero(3)}, x),
                        DimensionError);
    }
}

TEST_CASE("product-encoder snapshots are blind to x0 -> pi - x0", "[attacks]") {
    // qubits 0 and 2 both carry x0; Y0 Y2 commutes with every ansatz
    // generator and with ZZZ, so the reflected input has the same snapshot.
    const auto m = baseline();
    const auto basis = m.algebra().basis;
    const std::vector<double> x{0.4, 2.2};
    const std::vector<double> mirrored{pi - 0.4, 2.2};
    const auto a = snapshot(m.encode(x), basis).values;
    const auto b = snapshot(m.encode(mirrored), basis).values;
    CHECK((a - b).norm() < 1e-14);
    CHECK(strong_privacy_mse(x, mirrored) > 1.0);
}

TEST_CASE("far initial guesses", "[attacks]") {
    std::mt19937_64 rng(73);
    const std::vector<double> x{0.1, 0.2};
    for (int t = 0; t < 20; ++t) {
        const auto init = draw_far_init(x, rng);
        REQUIRE(init);
        const double mse = strong_privacy_mse(x, *init);
        CHECK(mse >= 2.0);
        CHECK(mse <= 3.0);
    }
    // from the centre of the square the farthest corner has mse pi^2 / 4
    const std::vector<double> centre{pi / 2, pi / 2};
    CHECK_FALSE(draw_far_init(centre, rng, 2.5, 3.0, 1000));
}

TEST_CASE("local minima counting", "[attacks]") {
    const std::size_t g = 9;
    std::vector<double> flat(g * g, 0.0);
    CHECK(count_strict_local_minima(flat, g) == 0);

    std::vector<double> bowl(g * g);
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const double a = static_cast<double>(i) - 4.0;
            const double b = static_cast<double>(j) - 4.0;
            bowl[i * g + j] = a * a + b * b;
        }
    }
    CHECK(count_strict_local_minima(bowl, g) == 1);
    bowl[2 * g + 6] = -1.0;
    CHECK(count_strict_local_minima(bowl, g) == 2);
    // boundary cells never count
    bowl[0] = -5.0;
    CHECK(count_strict_local_minima(bowl, g) == 2);
    CHECK_THROWS_AS(count_strict_local_minima(bowl, 8), DimensionError);
}

TEST_CASE("landscape scans", "[attacks]") {
    SECTION("constant function") {
        const auto l = scan_grid([](std::span<const double>) { return 0.0; }, 10);
        CHECK(l.values.size() == 100);
        CHECK(l.local_minima == 0);
        CHECK(l.axis.front() == 0.0);
        CHECK(l.axis.back() == pi);
    }
    SECTION("grid too small") {
        CHECK_THROWS_AS(scan_grid([](std::span<const double>) { return 0.0; }, 7), Error);
    }
    SECTION("row-major layout") {
        const auto l = scan_grid([](std::span<const double> x) { return x[0] + 10 * x[1]; }, 8);
        CHECK(l.values[1] == l.axis[0] + 10 * l.axis[1]);
        CHECK(l.values[8] == l.axis[1] + 10 * l.axis[0]);
    }
    SECTION("needs two features") {
        const Model m(make_model_config(3, EncoderKind::ProductRX, 2, 2, DlsMode::off(), 3));
        const auto basis = m.algebra().basis;
        const auto leak = snapshot(m.encode(std::vector<double>{0.1, 0.2, 0.3}), basis);
        CHECK_THROWS_AS(landscape_scan(m, basis, leak, 10), DimensionError);
    }
    SECTION("the truth is a zero of the scan") {
        const auto m = baseline();
        const auto basis = m.algebra().basis;
        const std::vector<double> x{pi * 10 / 40, pi * 25 / 40};
        const auto l = landscape_scan(m, basis, snapshot(m.encode(x), basis), 41);
        CHECK(l.values[10 * 41 + 25] < 1e-20);
        CHECK(l.local_minima >= 1);
    }
}
