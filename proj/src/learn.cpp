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
#include "vqcshield/learn.hpp"

#include <cmath>
#include <numbers>

#include "vqcshield/error.hpp"
#include "vqcshield/metrics.hpp"
#include "vqcshield/parallel.hpp"

namespace vqcshield {

namespace {

std::vector<std::vector<double>> feature_rows(const std::vector<Sample> &samples) {
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto &s : samples) {
        rows.push_back(s.features);
    }
    return rows;
}

double linspace_point(std::size_t i, std::size_t count) {
    if (count <= 1) {
        return 0.0;
    }
    return std::numbers::pi * static_cast<double>(i) / static_cast<double>(count - 1);
}

} // namespace

Dataset::Dataset(std::vector<Sample> samples, MoonsParams params)
    : samples_(std::move(samples)), params_(params) {
    for (const auto &s : samples_) {
        if (s.label != 1 && s.label != -1) {
            throw DataError("labels must be +1 or -1");
        }
    }
    const auto rows = feature_rows(samples_);
    scaler_ = FeatureScaler::fit(rows);
}

std::vector<double> Dataset::scaled(std::size_t i) const {
    return scaler_.scale(samples_.at(i).features);
}

Dataset make_moons(std::size_t n_samples, double noise_sigma, std::uint64_t seed) {
    if (n_samples < 2) {
        throw DataError("make_moons needs at least 2 samples");
    }
    if (!(noise_sigma >= 0.0)) {
        throw DataError("noise sigma must be >= 0");
    }
    const std::size_t n_upper = (n_samples + 1) / 2;
    const std::size_t n_lower = n_samples / 2;
    std::vector<Sample> samples;
    samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_upper; ++i) {
        const double t = linspace_point(i, n_upper);
        samples.push_back({{std::cos(t), std::sin(t)}, +1});
    }
    for (std::size_t i = 0; i < n_lower; ++i) {
        const double t = linspace_point(i, n_lower);
        samples.push_back({{1.0 - std::cos(t), 0.5 - std::sin(t)}, -1});
    }
    if (noise_sigma > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> noise(0.0, noise_sigma);
        for (auto &s : samples) {
            for (auto &f : s.features) {
                f += noise(rng);
            }
        }
    }
    return {std::move(samples), MoonsParams{n_samples, noise_sigma, seed}};
}

EncodedDataset encode_dataset(const Model &model, const Dataset &data) {
    if (data.feature_dim() != model.config().feature_dim) {
        throw DimensionError("dataset and model feature dimensions differ");
    }
    EncodedDataset out;
    out.states.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out.states.push_back(model.encode(data.scaled(i)));
        out.labels.push_back(data.samples()[i].label);
    }
    return out;
}

Evaluation evaluate(const Model &model, const EncodedDataset &data,
                    std::span<const double> theta, const PauliSum &observable) {
    const std::size_t n = data.states.size();
    if (n == 0) {
        throw DataError("loss of an empty dataset");
    }
    std::vector<double> outputs(n);
    std::vector<std::vector<double>> grads(n);
    parallel_for(n, [&](std::size_t i) {
        outputs[i] = model.output(data.states[i], theta, observable);
        grads[i] = model.output_gradient(data.states[i], theta, observable);
    });
    // Sequential reduction keeps results independent of the worker count.
    Evaluation ev{0.0, std::vector<double>(theta.size(), 0.0)};
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = outputs[i] - data.labels[i];
        ev.loss += r * r * inv_n;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            ev.grad[k] += 2.0 * r * inv_n * grads[i][k];
        }
    }
    return ev;
}

double loss(const Model &model, const Dataset &data, std::span<const double> theta,
            const ScramblerSample *w) {
    if (data.size() == 0) {
        throw DataError("loss of an empty dataset");
    }
    const auto enc = encode_dataset(model, data);
    const auto obs = model.measured_observable(w);
    double acc = 0.0;
    for (std::size_t i = 0; i < enc.states.size(); ++i) {
        const double r = model.output(enc.states[i], theta, obs) - enc.labels[i];
        acc += r * r;
    }
    return acc / static_cast<double>(enc.states.size());
}

std::vector<double> parameter_shift_grad(const Model &model, const Dataset &data,
                                         std::span<const double> theta,
                                         const ScramblerSample *w) {
    return evaluate(model, encode_dataset(model, data), theta, model.measured_observable(w))
        .grad;
}

std::vector<double> adam_step(OptimizerState &state, std::span<const double> grad,
                              std::span<const double> theta) {
    if (grad.size() != theta.size() || grad.size() != state.m.size()) {
        throw DimensionError("Adam state, gradient and parameters differ in length");
    }
    const auto &s = state.settings;
    ++state.step;
    const double t = static_cast<double>(state.step);
    const double c1 = 1.0 - std::pow(s.beta1, t);
    const double c2 = 1.0 - std::pow(s.beta2, t);
    std::vector<double> out(theta.begin(), theta.end());
    for (std::size_t k = 0; k < grad.size(); ++k) {
        state.m[k] = s.beta1 * state.m[k] + (1.0 - s.beta1) * grad[k];
        state.v[k] = s.beta2 * state.v[k] + (1.0 - s.beta2) * grad[k] * grad[k];
        const double m_hat = state.m[k] / c1;
        const double v_hat = state.v[k] / c2;
        out[k] -= s.lr * m_hat / (std::sqrt(v_hat) + s.eps);
    }
    return out;
}

std::vector<double> qdp_perturb(std::span<const double> grad, double lambda,
                                std::mt19937_64 &rng) {
    if (!(lambda >= 0.0)) {
        throw Error("Laplace scale must be >= 0");
    }
    std::vector<double> out(grad.begin(), grad.end());
    if (lambda == 0.0) {
        return out;
    }
    // Inverse CDF on u in (-1/2, 1/2).
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (auto &g : out) {
        double v = u(rng);
        while (v == -0.5) {
            v = u(rng);
        }
        g += -lambda * std::copysign(1.0, v) * std::log1p(-2.0 * std::abs(v));
    }
    return out;
}

std::string to_string(Variant v) {
    switch (v) {
    case Variant::Standard:
        return "standard";
    case Variant::QDP:
        return "qdp";
    default:
        return "dyloc";
    }
}

Variant variant_from_string(const std::string &name) {
    if (name == "standard") {
        return Variant::Standard;
    }
    if (name == "qdp") {
        return Variant::QDP;
    }
    if (name == "dyloc") {
        return Variant::DyLoC;
    }
    throw Error("unknown variant '" + name + "' (expected standard, qdp or dyloc)");
}

std::vector<double> initial_parameters(std::size_t n_params, double range,
                                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-range, range);
    std::vector<double> theta(n_params);
    for (auto &t : theta) {
        t = u(rng);
    }
    return theta;
}

std::vector<TrainRecord> train(const Model &model, const Dataset &data, Variant variant,
                               const TrainSettings &settings) {
    if (settings.steps == 0) {
        throw Error("train needs at least one step");
    }
    const bool scrambled =
        variant == Variant::DyLoC && model.config().dls.kind != DlsMode::Kind::Off;
    const auto enc = encode_dataset(model, data);
    const PauliSum &static_obs = model.observable();
    auto theta = initial_parameters(model.num_params(), settings.init_range,
                                    settings.init_seed);
    OptimizerState opt(model.num_params(), settings.adam);
    std::mt19937_64 noise_rng(settings.noise_seed);

    std::vector<TrainRecord> records;
    records.reserve(settings.steps);
    for (std::size_t t = 1; t <= settings.steps; ++t) {
        TrainRecord rec{t, 0.0, theta, {}, {}, std::nullopt, 0.0};
        const auto stat = evaluate(model, enc, theta, static_obs);
        rec.grad_static = stat.grad;
        if (scrambled) {
            rec.scrambler = sample_scrambler(model.config(), t, settings.scrambler_seed);
            const auto real =
                evaluate(model, enc, theta, model.measured_observable(&*rec.scrambler));
            rec.loss = real.loss;
            rec.grad_real = real.grad;
        } else if (variant == Variant::QDP) {
            rec.loss = stat.loss;
            rec.grad_real = qdp_perturb(stat.grad, settings.qdp_lambda, noise_rng);
        } else {
            rec.loss = stat.loss;
            rec.grad_real = stat.grad;
        }
        rec.mse_weak = weak_privacy_mse(rec.grad_real, rec.grad_static);
        theta = adam_step(opt, rec.grad_real, theta);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace vqcshield
