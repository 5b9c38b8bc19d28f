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
 * @file harness.hpp
 * Experiment configuration, presets and the drivers that turn a config
 * into CSV, JSON and manifest files.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vqcshield/learn.hpp"
#include "vqcshield/models.hpp"

namespace vqcshield {

inline constexpr std::string_view artifact_version = "0.1.0";

enum class Experiment { Train, AttackWeak, AttackStrong, Landscape, DlaInfo };
std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string &name);

/// Purpose seeds. from_master derives all five from one value.
struct SeedSet {
    std::uint64_t master = 0;
    std::uint64_t data = 0;
    std::uint64_t init = 0;
    std::uint64_t scrambler = 0;
    std::uint64_t noise = 0;
    std::uint64_t attack = 0;

    static SeedSet from_master(std::uint64_t master);
    bool operator==(const SeedSet &) const = default;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Train;

    // model
    std::size_t n_qubits = 3;
    int max_order = 2;
    std::size_t ansatz_layers = 2;
    DlsMode dls = DlsMode::perturbative(0.3);

    // data
    std::size_t n_samples = 150;
    double noise_sigma = 0.05;

    // training
    std::size_t steps = 100;
    double lr = 0.05;
    double init_range = 0.1;
    double qdp_lambda = 0.15;

    // adversary
    std::size_t attack_iters = 300;
    double attack_lr = 0.1;
    double fd_step = 1e-4;
    std::size_t probes = 5;
    std::size_t probe_stride = 10;
    double init_mse_min = 2.0;
    double init_mse_max = 3.0;

    std::size_t grid = 41;
    std::size_t purity_inputs = 20;

    std::vector<Variant> variants{Variant::Standard, Variant::QDP, Variant::DyLoC};
    SeedSet seeds = SeedSet::from_master(2024);
    std::filesystem::path out_dir = "out";

    /// Throws Error describing the first broken invariant.
    void validate() const;

    /// Canonical JSON text (sorted keys, every field explicit).
    [[nodiscard]] std::string to_json() const;
    /// Missing fields keep their defaults; unknown fields are an error.
    /// Purpose seeds absent from "seeds" are derived from "seeds.master".
    static ExperimentConfig from_json(std::string_view text);
    static ExperimentConfig load(const std::filesystem::path &path);

    /// Known names: "paper-repro".
    static ExperimentConfig preset(std::string_view name);

    bool operator==(const ExperimentConfig &) const = default;
};

/// Model configuration used for a variant: product encoder for Standard and
/// QDP, the Chebyshev graph encoder with scrambling for DyLoC.
ModelConfig variant_model_config(const ExperimentConfig &config, Variant variant);
TrainSettings train_settings(const ExperimentConfig &config);

/// Attack target: dataset index and a far initial guess, both from the
/// attack seed.
struct AttackTarget {
    std::size_t index;
    std::vector<double> x_true;
    std::vector<double> x_init;
};
AttackTarget pick_attack_target(const ExperimentConfig &config, const Dataset &data);

struct RunResult {
    std::vector<std::filesystem::path> files; // data files, then manifest
    std::map<std::string, double> metrics;
};

/**
 * Runs the configured experiment and writes its outputs under
 * config.out_dir, then manifest.json. On failure the files written by this
 * call are removed and the error is rethrown.
 */
RunResult run_experiment(const ExperimentConfig &config);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path &path);

} // namespace vqcshield
