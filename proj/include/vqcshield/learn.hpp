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
/**
 * @file learn.hpp
 * Two-moons data, squared loss, parameter-shift gradients, Adam, the
 * Laplace-noise baseline and the training loop.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vqcshield/models.hpp"

namespace vqcshield {

struct Sample {
    std::vector<double> features;
    int label; // +1 or -1
};

struct MoonsParams {
    std::size_t n_samples = 150;
    double noise_sigma = 0.05;
    std::uint64_t seed = 0;
};

class Dataset {
  public:
    /// Fits the feature scaler; throws DataError on degenerate ranges.
    Dataset(std::vector<Sample> samples, MoonsParams params);

    [[nodiscard]] const std::vector<Sample> &samples() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] std::size_t feature_dim() const noexcept { return scaler_.min.size(); }
    [[nodiscard]] const FeatureScaler &scaler() const noexcept { return scaler_; }
    [[nodiscard]] const MoonsParams &params() const noexcept { return params_; }
    /// Features of sample i mapped into [0, pi]^d.
    [[nodiscard]] std::vector<double> scaled(std::size_t i) const;

  private:
    std::vector<Sample> samples_;
    FeatureScaler scaler_;
    MoonsParams params_;
};

/**
 * Upper moon (cos t, sin t) labelled +1 on ceil(n/2) evenly spaced t in
 * [0, pi]; lower moon (1 - cos t, 0.5 - sin t) labelled -1 on floor(n/2)
 * points; i.i.d. N(0, sigma^2) noise on both coordinates.
 */
Dataset make_moons(std::size_t n_samples, double noise_sigma, std::uint64_t seed);

/// Encoder states of every sample, computed once per model.
struct EncodedDataset {
    std::vector<qsim::StateVector> states;
    std::vector<int> labels;
};
EncodedDataset encode_dataset(const Model &model, const Dataset &data);

struct Evaluation {
    double loss;
    std::vector<double> grad;
};

/// Mean squared error of the outputs against the labels, with gradient.
Evaluation evaluate(const Model &model, const EncodedDataset &data,
                    std::span<const double> theta, const PauliSum &observable);

double loss(const Model &model, const Dataset &data, std::span<const double> theta,
            const ScramblerSample *w = nullptr);
std::vector<double> parameter_shift_grad(const Model &model, const Dataset &data,
                                         std::span<const double> theta,
                                         const ScramblerSample *w = nullptr);

struct AdamSettings {
    double lr = 0.05;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct OptimizerState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t step = 0;
    AdamSettings settings;

    OptimizerState(std::size_t n_params, AdamSettings s)
        : m(n_params, 0.0), v(n_params, 0.0), settings(s) {}
};

/// Bias-corrected Adam update; returns the new parameters.
std::vector<double> adam_step(OptimizerState &state, std::span<const double> grad,
                              std::span<const double> theta);

/// grad + i.i.d. Laplace(0, lambda) noise.
std::vector<double> qdp_perturb(std::span<const double> grad, double lambda,
                                std::mt19937_64 &rng);

enum class Variant { Standard, QDP, DyLoC };
std::string to_string(Variant v);
Variant variant_from_string(const std::string &name);

struct TrainSettings {
    std::size_t steps = 100;
    AdamSettings adam;
    double init_range = 0.1;
    double qdp_lambda = 0.15;
    std::uint64_t init_seed = 0;
    std::uint64_t scrambler_seed = 0;
    std::uint64_t noise_seed = 0;
};

struct TrainRecord {
    std::size_t step;
    double loss;
    std::vector<double> theta; // parameters the gradients were taken at
    std::vector<double> grad_real;
    std::vector<double> grad_static;
    std::optional<ScramblerSample> scrambler;
    double mse_weak;
};

/// Uniform [-range, range] draws.
std::vector<double> initial_parameters(std::size_t n_params, double range, std::uint64_t seed);

/**
 * Full-batch training. Standard updates with the static gradient; QDP with
 * the static gradient plus Laplace noise; DyLoC samples W_t every step and
 * updates with the scrambled gradient. Every variant logs the static
 * gradient and mse_weak between the applied and the static gradient.
 */
std::vector<TrainRecord> train(const Model &model, const Dataset &data, Variant variant,
                               const TrainSettings &settings);

} // namespace vqcshield
