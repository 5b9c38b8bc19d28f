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
 * @file models.hpp
 * Baseline and scrambled-encoding model builders.
 *
 * Raw features are first scaled affinely into the input domain [0, pi]
 * (one interval per feature, from the dataset's min/max). The product
 * encoder uses the scaled value directly as an RX angle. The Chebyshev
 * graph encoder maps it further to [-0.95, 0.95] and rotates qubit j by
 * 2 k_j arccos(x), sandwiched between CZ ladders.
 */
#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vqcshield/dla.hpp"
#include "vqcshield/pauli.hpp"
#include "vqcshield/qsim.hpp"

namespace vqcshield {

inline constexpr double input_domain_max = std::numbers::pi;
inline constexpr double chebyshev_range = 0.95;

enum class EncoderKind { ProductRX, TCGE };

struct DlsMode {
    enum class Kind { Off, Perturbative, Haar };
    Kind kind = Kind::Off;
    double delta = 0.0; // radians, Perturbative only

    static DlsMode off() { return {}; }
    static DlsMode perturbative(double delta) { return {Kind::Perturbative, delta}; }
    static DlsMode haar() { return {Kind::Haar, 0.0}; }
    bool operator==(const DlsMode &) const = default;
};

struct ModelConfig {
    std::size_t n_qubits = 3;
    EncoderKind encoder = EncoderKind::ProductRX;
    std::vector<int> tower_orders; // k_j, one per qubit
    int max_order = 2;             // K
    std::size_t ansatz_layers = 2; // L
    DlsMode dls;
    PauliString observable;
    std::size_t feature_dim = 2;
    std::uint64_t rng_seed = 0;

    /// Throws on any broken invariant.
    void validate() const;
};

/// k_j = (j mod K) + 1.
std::vector<int> default_tower_orders(std::size_t n_qubits, int max_order);
/// Z on every qubit.
PauliString all_z_observable(std::size_t n_qubits);

/// Config with default tower orders and the all-Z observable.
ModelConfig make_model_config(std::size_t n_qubits, EncoderKind encoder, int max_order,
                              std::size_t layers, DlsMode dls, std::size_t feature_dim,
                              std::uint64_t seed = 0);

/// Per-feature affine map from raw values into [0, pi].
struct FeatureScaler {
    std::vector<double> min;
    std::vector<double> max;

    /// Throws DataError on a degenerate range.
    static FeatureScaler fit(std::span<const std::vector<double>> rows);
    [[nodiscard]] std::vector<double> scale(std::span<const double> raw) const;
};

/// 2 k_j arccos(mapped[j mod d]); mapped values must lie in [-1, 1].
std::vector<double> chebyshev_tower_angles(std::span<const double> mapped,
                                           std::span<const int> orders,
                                           std::size_t n_qubits);

/// Per-qubit rotation angles for scaled features in [0, pi]^d.
std::vector<double> map_features(const ModelConfig &config, std::span<const double> scaled);
std::vector<double> map_features(const ModelConfig &config, const FeatureScaler &scaler,
                                 std::span<const double> raw);

qsim::Circuit build_encoder(const ModelConfig &config, std::span<const double> angles);
/// L repetitions of [RY(theta) on every qubit, CZ chain].
qsim::Circuit build_ansatz(const ModelConfig &config);

/// One per-step draw of the local scrambling layer W_t = (x)_q w_q with
/// w_q = RZ(a) RY(b) RZ(c).
struct ScramblerSample {
    std::size_t step = 0;
    std::vector<std::array<double, 3>> euler;

    [[nodiscard]] std::size_t num_qubits() const noexcept { return euler.size(); }
    [[nodiscard]] qsim::Mat2 local_unitary(std::size_t qubit) const;
};

/// Deterministic in (config.dls, step, stream_seed). Throws for DLS Off.
ScramblerSample sample_scrambler(const ModelConfig &config, std::size_t step,
                                 std::uint64_t stream_seed);

/// Identity scrambler on n qubits.
ScramblerSample identity_scrambler(std::size_t n_qubits);

/// W^dag O W expanded over Pauli words.
PauliSum effective_observable(const PauliSum &observable, const ScramblerSample &w);
PauliSum effective_observable(const PauliString &observable, const ScramblerSample &w);

/// Symbolic structure of the model's trainable block.
struct ModelAlgebra {
    AbsorbedAnsatz absorbed;
    /// Lie closure of the absorbed generators.
    DlaBasis dla;
    /// Observable module: snapshot basis with mu set from F^dag O F.
    DlaBasis basis;
};

/**
 * Encoder plus ansatz with a fixed configuration. Evaluation is const and
 * reentrant.
 */
class Model {
  public:
    explicit Model(ModelConfig config);

    [[nodiscard]] const ModelConfig &config() const noexcept { return config_; }
    [[nodiscard]] const qsim::Circuit &ansatz() const noexcept { return ansatz_; }
    [[nodiscard]] std::size_t num_params() const noexcept { return ansatz_.num_params(); }
    [[nodiscard]] const PauliSum &observable() const noexcept { return observable_; }

    /// rho(x) as a pure state, from scaled features.
    [[nodiscard]] qsim::StateVector encode(std::span<const double> scaled) const;
    /// O, or W^dag O W when a scrambler sample is given.
    [[nodiscard]] PauliSum measured_observable(const ScramblerSample *w) const;

    [[nodiscard]] double output(const qsim::StateVector &encoded,
                                std::span<const double> theta,
                                const PauliSum &observable) const;
    /// d output / d theta by the +-pi/2 shift rule.
    [[nodiscard]] std::vector<double> output_gradient(const qsim::StateVector &encoded,
                                                      std::span<const double> theta,
                                                      const PauliSum &observable) const;

    [[nodiscard]] ModelAlgebra algebra(std::size_t dim_cap = default_dim_cap) const;

  private:
    ModelConfig config_;
    qsim::Circuit ansatz_;
    PauliSum observable_;
};

/// y = Tr(O_eff U(theta) rho(x) U(theta)^dag) for scaled features.
double model_output(const ModelConfig &config, std::span<const double> scaled,
                    std::span<const double> theta, const ScramblerSample *w = nullptr);

std::string to_string(EncoderKind kind);
EncoderKind encoder_from_string(const std::string &name);
std::string to_string(DlsMode::Kind kind);
DlsMode::Kind dls_kind_from_string(const std::string &name);

} // namespace vqcshield
