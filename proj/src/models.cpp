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
#include "vqcshield/models.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "vqcshield/error.hpp"
#include "vqcshield/rng.hpp"

namespace vqcshield {

using qsim::Circuit;
using qsim::GateOp;

void ModelConfig::validate() const {
    if (n_qubits == 0 || n_qubits > qsim::max_qubits) {
        throw DimensionError("n_qubits must be in 1..12");
    }
    if (feature_dim == 0) {
        throw DimensionError("feature_dim must be positive");
    }
    if (ansatz_layers == 0) {
        throw Error("ansatz_layers must be >= 1");
    }
    if (observable.num_qubits() != n_qubits) {
        throw DimensionError("observable acts on a different register");
    }
    if (encoder == EncoderKind::TCGE) {
        if (n_qubits < 2) {
            throw DimensionError("the Chebyshev graph encoder needs at least 2 qubits");
        }
        if (tower_orders.size() != n_qubits) {
            throw DimensionError("tower_orders must have one entry per qubit");
        }
        for (int k : tower_orders) {
            if (k < 1 || k > max_order) {
                throw Error("tower orders must satisfy 1 <= k_j <= K");
            }
        }
    }
    if (dls.delta < 0.0 || !std::isfinite(dls.delta)) {
        throw Error("scrambling delta must be finite and >= 0");
    }
}

std::vector<int> default_tower_orders(std::size_t n_qubits, int max_order) {
    if (max_order < 1) {
        throw Error("max Chebyshev order must be >= 1");
    }
    std::vector<int> k(n_qubits);
    for (std::size_t j = 0; j < n_qubits; ++j) {
        k[j] = static_cast<int>(j % static_cast<std::size_t>(max_order)) + 1;
    }
    return k;
}

PauliString all_z_observable(std::size_t n_qubits) {
    return PauliString::parse(std::string(n_qubits, 'Z'));
}

ModelConfig make_model_config(std::size_t n_qubits, EncoderKind encoder, int max_order,
                              std::size_t layers, DlsMode dls, std::size_t feature_dim,
                              std::uint64_t seed) {
    ModelConfig c;
    c.n_qubits = n_qubits;
    c.encoder = encoder;
    c.max_order = max_order;
    c.tower_orders = default_tower_orders(n_qubits, max_order);
    c.ansatz_layers = layers;
    c.dls = dls;
    c.observable = all_z_observable(n_qubits);
    c.feature_dim = feature_dim;
    c.rng_seed = seed;
    c.validate();
    return c;
}

FeatureScaler FeatureScaler::fit(std::span<const std::vector<double>> rows) {
    if (rows.empty()) {
        throw DataError("cannot fit a scaler on an empty dataset");
    }
    const std::size_t d = rows.front().size();
    FeatureScaler s{rows.front(), rows.front()};
    for (const auto &r : rows) {
        if (r.size() != d) {
            throw DataError("rows have inconsistent feature counts");
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::isfinite(r[i])) {
                throw DataError("non-finite feature value");
            }
            s.min[i] = std::min(s.min[i], r[i]);
            s.max[i] = std::max(s.max[i], r[i]);
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!(s.max[i] > s.min[i])) {
            throw DataError("degenerate range for feature " + std::to_string(i));
        }
    }
    return s;
}

std::vector<double> FeatureScaler::scale(std::span<const double> raw) const {
    if (raw.size() != min.size()) {
        throw DimensionError("feature count does not match the scaler");
    }
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = input_domain_max * (raw[i] - min[i]) / (max[i] - min[i]);
    }
    return out;
}

std::vector<double> chebyshev_tower_angles(std::span<const double> mapped,
                                           std::span<const int> orders,
                                           std::size_t n_qubits) {
    if (mapped.empty() || orders.size() != n_qubits) {
        throw DimensionError("need one Chebyshev order per qubit and >= 1 feature");
    }
    std::vector<double> phi(n_qubits);
    for (std::size_t j = 0; j < n_qubits; ++j) {
        const double x = mapped[j % mapped.size()];
        if (!(x >= -1.0 && x <= 1.0)) {
            throw DataError("Chebyshev input outside [-1, 1]");
        }
        phi[j] = 2.0 * orders[j] * std::acos(x);
    }
    return phi;
}

std::vector<double> map_features(const ModelConfig &config, std::span<const double> scaled) {
    if (scaled.size() != config.feature_dim) {
        throw DimensionError("expected " + std::to_string(config.feature_dim) +
                             " features");
    }
    for (double s : scaled) {
        if (!std::isfinite(s)) {
            throw DataError("non-finite feature value");
        }
    }
    if (config.encoder == EncoderKind::ProductRX) {
        std::vector<double> angles(config.n_qubits);
        for (std::size_t j = 0; j < config.n_qubits; ++j) {
            angles[j] = scaled[j % scaled.size()];
        }
        return angles;
    }
    std::vector<double> mapped(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        mapped[i] = -chebyshev_range + 2.0 * chebyshev_range * scaled[i] / input_domain_max;
    }
    return chebyshev_tower_angles(mapped, config.tower_orders, config.n_qubits);
}

std::vector<double> map_features(const ModelConfig &config, const FeatureScaler &scaler,
                                 std::span<const double> raw) {
    return map_features(config, scaler.scale(raw));
}

namespace {

void add_cz_ladder(Circuit &c, std::size_t n) {
    for (std::size_t q = 0; q + 1 < n; ++q) {
        c.add(GateOp::cz(q, q + 1));
    }
}

} // namespace

Circuit build_encoder(const ModelConfig &config, std::span<const double> angles) {
    const std::size_t n = config.n_qubits;
    if (angles.size() != n) {
        throw DimensionError("need one encoding angle per qubit");
    }
    Circuit c(n);
    if (config.encoder == EncoderKind::ProductRX) {
        for (std::size_t q = 0; q < n; ++q) {
            c.add(GateOp::rx(q, angles[q]));
        }
        return c;
    }
    if (n < 2) {
        throw DimensionError("the Chebyshev graph encoder needs at least 2 qubits");
    }
    for (std::size_t q = 0; q < n; ++q) {
        c.add(GateOp::h(q));
    }
    add_cz_ladder(c, n);
    for (std::size_t q = 0; q < n; ++q) {
        c.add(GateOp::ry(q, angles[q]));
    }
    // inverse ladder: the same CZs in reverse order
    for (std::size_t q = n - 1; q > 0; --q) {
        c.add(GateOp::cz(q - 1, q));
    }
    return c;
}

Circuit build_ansatz(const ModelConfig &config) {
    if (config.ansatz_layers == 0) {
        throw Error("ansatz_layers must be >= 1");
    }
    Circuit c(config.n_qubits);
    for (std::size_t l = 0; l < config.ansatz_layers; ++l) {
        for (std::size_t q = 0; q < config.n_qubits; ++q) {
            c.add_parameterized(GateOp::ry(q, 0.0));
        }
        add_cz_ladder(c, config.n_qubits);
    }
    return c;
}

qsim::Mat2 ScramblerSample::local_unitary(std::size_t qubit) const {
    const auto &[a, b, c] = euler.at(qubit);
    using qsim::GateKind;
    return qsim::multiply(
        qsim::single_qubit_matrix(GateKind::RZ, {a, 0, 0}),
        qsim::multiply(qsim::single_qubit_matrix(GateKind::RY, {b, 0, 0}),
                       qsim::single_qubit_matrix(GateKind::RZ, {c, 0, 0})));
}

ScramblerSample sample_scrambler(const ModelConfig &config, std::size_t step,
                                 std::uint64_t stream_seed) {
    if (config.dls.kind == DlsMode::Kind::Off) {
        throw Error("cannot sample a scrambler with DLS off");
    }
    std::mt19937_64 rng(derive_seed(stream_seed, step));
    ScramblerSample s{step, std::vector<std::array<double, 3>>(config.n_qubits)};
    if (config.dls.kind == DlsMode::Kind::Perturbative) {
        const double d = config.dls.delta;
        std::uniform_real_distribution<double> u(-d, d);
        for (auto &e : s.euler) {
            e = d == 0.0 ? std::array<double, 3>{0, 0, 0}
                         : std::array<double, 3>{u(rng), u(rng), u(rng)};
        }
        return s;
    }
    // Haar on SU(2) in ZYZ Euler form: density of beta is sin(beta) / 2.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (auto &e : s.euler) {
        const double alpha = 2.0 * std::numbers::pi * u01(rng);
        const double beta = std::acos(1.0 - 2.0 * u01(rng));
        const double gamma = 2.0 * std::numbers::pi * u01(rng);
        e = {alpha, beta, gamma};
    }
    return s;
}

ScramblerSample identity_scrambler(std::size_t n_qubits) {
    return {0, std::vector<std::array<double, 3>>(n_qubits, {0.0, 0.0, 0.0})};
}

namespace {

struct LocalTerm {
    double coeff;
    char op;
};

// w^dag sigma w = sum_tau c_tau tau with c_tau = Tr(tau w^dag sigma w) / 2.
std::vector<LocalTerm> conjugate_local(char sigma, const qsim::Mat2 &w) {
    if (sigma == 'I') {
        return {{1.0, 'I'}};
    }
    const auto s = PauliString::single(1, 0, sigma);
    const auto sm = qsim::dense_matrix(s);
    const qsim::Mat2 sigma_m{sm(0, 0), sm(0, 1), sm(1, 0), sm(1, 1)};
    const auto m = qsim::multiply(qsim::adjoint(w), qsim::multiply(sigma_m, w));
    std::vector<LocalTerm> out;
    for (char tau : {'X', 'Y', 'Z'}) {
        const auto tm = qsim::dense_matrix(PauliString::single(1, 0, tau));
        const std::complex<double> tr = tm(0, 0) * m[0] + tm(0, 1) * m[2] +
                                        tm(1, 0) * m[1] + tm(1, 1) * m[3];
        const double c = tr.real() / 2.0;
        if (c != 0.0) {
            out.push_back({c, tau});
        }
    }
    return out;
}

} // namespace

PauliSum effective_observable(const PauliSum &observable, const ScramblerSample &w) {
    const std::size_t n = observable.num_qubits();
    if (w.num_qubits() != n) {
        throw DimensionError("scrambler and observable registers differ");
    }
    std::vector<qsim::Mat2> local(n);
    for (std::size_t q = 0; q < n; ++q) {
        local[q] = w.local_unitary(q);
    }
    PauliSum out(n);
    for (const auto &term : observable.terms()) {
        std::vector<std::vector<LocalTerm>> factors(n);
        for (std::size_t q = 0; q < n; ++q) {
            factors[q] = conjugate_local(term.word.op(q), local[q]);
        }
        // Cartesian product over the per-qubit expansions.
        std::vector<std::size_t> pick(n, 0);
        for (bool done = false; !done;) {
            double c = term.coeff;
            std::string label(n, 'I');
            for (std::size_t q = 0; q < n; ++q) {
                c *= factors[q][pick[q]].coeff;
                label[q] = factors[q][pick[q]].op;
            }
            out.add(c, PauliString::parse(label));
            done = true;
            for (std::size_t q = n; q-- > 0;) {
                if (++pick[q] < factors[q].size()) {
                    done = false;
                    break;
                }
                pick[q] = 0;
            }
        }
    }
    return out;
}

PauliSum effective_observable(const PauliString &observable, const ScramblerSample &w) {
    return effective_observable(PauliSum(observable), w);
}

Model::Model(ModelConfig config)
    : config_(std::move(config)), ansatz_(build_ansatz(config_)),
      observable_(config_.observable) {
    config_.validate();
}

qsim::StateVector Model::encode(std::span<const double> scaled) const {
    const auto angles = map_features(config_, scaled);
    return qsim::run_circuit(build_encoder(config_, angles), {});
}

PauliSum Model::measured_observable(const ScramblerSample *w) const {
    if (w == nullptr) {
        return observable_;
    }
    return effective_observable(observable_, *w);
}

double Model::output(const qsim::StateVector &encoded, std::span<const double> theta,
                     const PauliSum &observable) const {
    return qsim::expectation(qsim::run_circuit(ansatz_, theta, encoded), observable);
}

std::vector<double> Model::output_gradient(const qsim::StateVector &encoded,
                                           std::span<const double> theta,
                                           const PauliSum &observable) const {
    if (theta.size() != num_params()) {
        throw DimensionError("parameter-count mismatch");
    }
    for (const auto &slot : ansatz_.param_slots()) {
        if (!slot.generator.is_hermitian() || slot.generator.scale() != 1.0) {
            throw Error("parameter-shift needs unit Pauli-word generators");
        }
    }
    std::vector<double> shifted(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    constexpr double shift = std::numbers::pi / 2;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + shift;
        const double plus = output(encoded, shifted, observable);
        shifted[k] = theta[k] - shift;
        const double minus = output(encoded, shifted, observable);
        shifted[k] = theta[k];
        grad[k] = 0.5 * (plus - minus);
    }
    return grad;
}

ModelAlgebra Model::algebra(std::size_t dim_cap) const {
    auto absorbed = absorb_fixed_gates(ansatz_);
    auto dla = lie_closure(absorbed.generators, dim_cap);
    auto frame = absorbed.frame_observable(observable_);
    auto basis = observable_module(absorbed.generators, frame, dim_cap);
    return {std::move(absorbed), std::move(dla), std::move(basis)};
}

double model_output(const ModelConfig &config, std::span<const double> scaled,
                    std::span<const double> theta, const ScramblerSample *w) {
    const Model model(config);
    return model.output(model.encode(scaled), theta, model.measured_observable(w));
}

std::string to_string(EncoderKind kind) {
    return kind == EncoderKind::ProductRX ? "product_rx" : "tcge";
}

EncoderKind encoder_from_string(const std::string &name) {
    if (name == "product_rx") {
        return EncoderKind::ProductRX;
    }
    if (name == "tcge") {
        return EncoderKind::TCGE;
    }
    throw Error("unknown encoder '" + name + "'");
}

std::string to_string(DlsMode::Kind kind) {
    switch (kind) {
    case DlsMode::Kind::Off:
        return "off";
    case DlsMode::Kind::Perturbative:
        return "perturbative";
    default:
        return "haar";
    }
}

DlsMode::Kind dls_kind_from_string(const std::string &name) {
    if (name == "off") {
        return DlsMode::Kind::Off;
    }
    if (name == "perturbative") {
        return DlsMode::Kind::Perturbative;
    }
    if (name == "haar") {
        return DlsMode::Kind::Haar;
    }
    throw Error("unknown DLS mode '" + name + "'");
}

} // namespace vqcshield
