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

#include "vqcshield/error.hpp"
#include "vqcshield/learn.hpp"
#include "vqcshield/metrics.hpp"

using namespace vqcshield;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

Model single_qubit_model() {
    return Model(make_model_config(1, EncoderKind::ProductRX, 1, 1, DlsMode::off(), 2));
}

EncodedDataset single_state(int label, std::size_t copies = 1) {
    EncodedDataset e;
    for (std::size_t i = 0; i < copies; ++i) {
        e.states.emplace_back(1);
        e.labels.push_back(label);
    }
    return e;
}

// central differences of the full-batch loss
std::vector<double> fd_grad(const Model &m, const Dataset &d, std::vector<double> theta,
                            const ScramblerSample *w, double h) {
    std::vector<double> g(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double t0 = theta[k];
        theta[k] = t0 + h;
        const double up = loss(m, d, theta, w);
        theta[k] = t0 - h;
        const double down = loss(m, d, theta, w);
        theta[k] = t0;
        g[k] = (up - down) / (2 * h);
    }
    return g;
}

} // namespace

TEST_CASE("make_moons", "[learn]") {
    SECTION("noise-free endpoints") {
        const auto d = make_moons(4, 0.0, 1);
        const auto &s = d.samples();
        CHECK(s[0].features == std::vector<double>{1.0, 0.0});
        CHECK(s[0].label == 1);
        CHECK_THAT(s[2].features[0], WithinAbs(0.0, 1e-15));
        CHECK_THAT(s[2].features[1], WithinAbs(0.5, 1e-15));
        CHECK(s[2].label == -1);
    }
    SECTION("150 samples, balanced") {
        const auto d = make_moons(150, 0.05, 2024);
        CHECK(d.size() == 150);
        int pos = 0;
        for (const auto &s : d.samples()) {
            pos += s.label == 1;
        }
        CHECK(pos == 75);
        const auto again = make_moons(150, 0.05, 2024);
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(again.samples()[i].features == d.samples()[i].features);
        }
    }
    SECTION("odd counts put the extra point in the upper moon") {
        const auto d = make_moons(5, 0.0, 1);
        int pos = 0;
        for (const auto &s : d.samples()) {
            pos += s.label == 1;
        }
        CHECK(pos == 3);
    }
    CHECK_THROWS_AS(make_moons(1, 0.05, 1), Error);
    CHECK_THROWS_AS(make_moons(10, -0.1, 1), Error);
}

TEST_CASE("loss examples", "[learn]") {
    const auto m = single_qubit_model();
    const PauliSum z(PauliString::parse("Z"));
    SECTION("prediction equals label") {
        CHECK(evaluate(m, single_state(1), std::vector<double>{0.0}, z).loss == 0.0);
    }
    SECTION("zero output against +-1 labels") {
        EncodedDataset e = single_state(1);
        e.states.emplace_back(1);
        e.labels.push_back(-1);
        CHECK_THAT(evaluate(m, e, std::vector<double>{pi / 2}, z).loss, WithinAbs(1.0, 1e-15));
    }
    SECTION("single sample, y = 0.5") {
        CHECK_THAT(evaluate(m, single_state(1), std::vector<double>{pi / 3}, z).loss,
                   WithinAbs(0.25, 1e-15));
    }
    SECTION("stationary point") {
        const auto ev = evaluate(m, single_state(-1), std::vector<double>{pi}, z);
        CHECK_THAT(ev.loss, WithinAbs(0.0, 1e-15));
        CHECK_THAT(ev.grad[0], WithinAbs(0.0, 1e-9));
    }
    SECTION("empty dataset") {
        CHECK_THROWS_AS(evaluate(m, EncodedDataset{}, std::vector<double>{0.0}, z), Error);
    }
}

TEST_CASE("parameter-shift output gradient", "[learn]") {
    const auto m = single_qubit_model();
    const auto g = m.output_gradient(qsim::StateVector(1), std::vector<double>{pi / 2},
                                     PauliSum(PauliString::parse("Z")));
    CHECK_THAT(g[0], WithinAbs(-1.0, 1e-14));
}

TEST_CASE("parameter-shift matches finite differences", "[learn][property]") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-pi, pi);
    const auto data = make_moons(12, 0.05, 3);
    for (std::size_t n : {2, 3, 4}) {
        for (std::size_t layers : {1, 2}) {
            for (auto enc : {EncoderKind::ProductRX, EncoderKind::TCGE}) {
                const auto c = make_model_config(n, enc, 2, layers, DlsMode::perturbative(0.3), 2, 8);
                const Model m(c);
                std::vector<double> theta(m.num_params());
                for (auto &t : theta) {
                    t = u(rng);
                }
                const auto w = sample_scrambler(c, rng() % 50, 21);
                for (const ScramblerSample *ws : {static_cast<const ScramblerSample *>(nullptr), &w}) {
                    const auto ps = parameter_shift_grad(m, data, theta, ws);
                    const auto fd = fd_grad(m, data, theta, ws, 1e-5);
                    for (std::size_t k = 0; k < ps.size(); ++k) {
                        CHECK_THAT(ps[k], WithinAbs(fd[k], 1e-6));
                    }
                }
            }
        }
    }
}

TEST_CASE("adam_step", "[learn]") {
    AdamSettings s;
    SECTION("zero gradient") {
        OptimizerState st(2, s);
        st.m = {0.5, -0.5};
        st.v = {0.1, 0.1};
        const std::vector<double> theta{1.0, 2.0};
        const auto out = adam_step(st, std::vector<double>{0.0, 0.0}, theta);
        CHECK_THAT(out[0], WithinAbs(1.0 - 0.05 * (0.45 / 0.1) / (std::sqrt(0.0999 / 0.001) + 1e-8), 1e-12));
        CHECK(st.m[0] == 0.45);
        CHECK(st.step == 1);
        OptimizerState fresh(2, s);
        CHECK(adam_step(fresh, std::vector<double>{0.0, 0.0}, theta) == theta);
    }
    SECTION("first step moves by lr against the gradient sign") {
        OptimizerState st(3, s);
        const std::vector<double> theta{0.0, 0.0, 0.0};
        const auto out = adam_step(st, std::vector<double>{2.0, -0.01, 1e3}, theta);
        CHECK_THAT(out[0], WithinAbs(-0.05, 1e-8));
        CHECK_THAT(out[1], WithinAbs(0.05, 1e-6));
        CHECK_THAT(out[2], WithinAbs(-0.05, 1e-8));
    }
    SECTION("deterministic") {
        OptimizerState a(2, s);
        OptimizerState b(2, s);
        const std::vector<double> g{0.3, -0.7};
        const std::vector<double> t{0.1, 0.2};
        CHECK(adam_step(a, g, t) == adam_step(b, g, t));
    }
    SECTION("length mismatch") {
        OptimizerState st(2, s);
        CHECK_THROWS_AS(adam_step(st, std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                        DimensionError);
    }
}

TEST_CASE("Laplace gradient noise", "[learn]") {
    const std::vector<double> g{0.1, -0.2, 0.3};
    std::mt19937_64 rng(1);
    CHECK(qdp_perturb(g, 0.0, rng) == g);
    std::mt19937_64 a(9);
    std::mt19937_64 b(9);
    CHECK(qdp_perturb(g, 0.15, a) == qdp_perturb(g, 0.15, b));

    std::mt19937_64 big(77);
    const std::vector<double> zeros(100000, 0.0);
    const auto noise = qdp_perturb(zeros, 0.15, big);
    double s = 0.0;
    double s2 = 0.0;
    for (double v : noise) {
        s += v;
        s2 += v * v;
    }
    const double mean = s / noise.size();
    const double sd = std::sqrt(s2 / noise.size() - mean * mean);
    CHECK_THAT(sd, WithinRel(std::sqrt(2.0) * 0.15, 0.02));
    CHECK_THROWS_AS(qdp_perturb(g, -1.0, rng), Error);
}

TEST_CASE("privacy metrics", "[learn]") {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<double> z{0.0, 0.0};
    CHECK(weak_privacy_mse(a, a) == 0.0);
    CHECK(weak_privacy_mse(a, z) == 0.5);
    CHECK(strong_privacy_mse(std::vector<double>{1.0, 2.0}, std::vector<double>{3.0, 2.0}) == 2.0);
    CHECK_THROWS_AS(weak_privacy_mse(a, std::vector<double>{1.0}), DimensionError);
}

TEST_CASE("training loop", "[learn]") {
    const auto data = make_moons(30, 0.05, 4);
    TrainSettings s;
    s.steps = 12;
    s.init_seed = 1;
    s.scrambler_seed = 2;
    s.noise_seed = 3;

    SECTION("scrambling with delta 0 leaves mse_weak at zero") {
        const Model m(make_model_config(3, EncoderKind::TCGE, 2, 2, DlsMode::perturbative(0.0), 2));
        for (const auto &r : train(m, data, Variant::DyLoC, s)) {
            CHECK(r.mse_weak == 0.0);
            CHECK(r.scrambler.has_value());
        }
    }
    SECTION("records are consistent") {
        const Model m(make_model_config(3, EncoderKind::TCGE, 2, 2, DlsMode::perturbative(0.3), 2));
        const auto recs = train(m, data, Variant::DyLoC, s);
        REQUIRE(recs.size() == 12);
        for (const auto &r : recs) {
            CHECK(r.grad_real.size() == 6);
            CHECK(r.grad_static.size() == 6);
            CHECK(r.mse_weak == weak_privacy_mse(r.grad_real, r.grad_static));
            CHECK(r.mse_weak > 0.0);
        }
        const auto again = train(m, data, Variant::DyLoC, s);
        CHECK(again.back().theta == recs.back().theta);
    }
    SECTION("standard variant has no gradient mismatch") {
        const Model m(make_model_config(3, EncoderKind::ProductRX, 2, 2, DlsMode::off(), 2));
        const auto recs = train(m, data, Variant::Standard, s);
        for (const auto &r : recs) {
            CHECK(r.mse_weak <= 1e-12);
        }
        CHECK(recs.back().loss < recs.front().loss);
    }
    SECTION("noisy variant perturbs the applied gradient") {
        const Model m(make_model_config(3, EncoderKind::ProductRX, 2, 2, DlsMode::off(), 2));
        const auto recs = train(m, data, Variant::QDP, s);
        CHECK(recs.front().mse_weak > 0.0);
    }
    SECTION("zero steps") {
        const Model m(make_model_config(3, EncoderKind::ProductRX, 2, 2, DlsMode::off(), 2));
        s.steps = 0;
        CHECK_THROWS_AS(train(m, data, Variant::Standard, s), Error);
    }
}
