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
#include "vqcshield/qsim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vqcshield/error.hpp"

namespace vqcshield::qsim {

namespace {

std::uint64_t qubit_bit(std::size_t n, std::size_t q) {
    return std::uint64_t{1} << (n - 1 - q);
}

void require_normalized(const StateVector &state) {
    const double nrm = state.norm_squared();
    if (std::abs(nrm - 1.0) > norm_tolerance) {
        throw Error("state vector is not normalized (norm^2 = " +
                    std::to_string(nrm) + ")");
    }
}

void check_targets(const GateOp &op, std::size_t n) {
    for (std::size_t i = 0; i < op.targets.size(); ++i) {
        if (op.targets[i] >= n) {
            throw DimensionError("gate target " + std::to_string(op.targets[i]) +
                                 " out of range for " + std::to_string(n) +
                                 " qubits");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (op.targets[i] == op.targets[j]) {
                throw DimensionError("gate targets must be distinct");
            }
        }
    }
    if (op.kind == GateKind::PauliRotation) {
        if (!op.generator || op.generator->num_qubits() != n) {
            throw DimensionError("Pauli rotation generator does not match register");
        }
    }
}

void apply_cz(StateVector &state, std::size_t a, std::size_t b) {
    const auto n = state.num_qubits();
    const auto mask = qubit_bit(n, a) | qubit_bit(n, b);
    auto amps = state.mutable_amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) {
            amps[i] = -amps[i];
        }
    }
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw DimensionError("state vector supports 1..12 qubits");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw DimensionError("state vector supports 1..12 qubits");
    }
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw DimensionError("amplitude count must equal 2^n_qubits");
    }
    require_normalized(*this);
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

GateOp GateOp::h(std::size_t q) { return {GateKind::H, {q}, {}, {}, {}}; }
GateOp GateOp::rx(std::size_t q, double angle) {
    return {GateKind::RX, {q}, {angle, 0, 0}, {}, {}};
}
GateOp GateOp::ry(std::size_t q, double angle) {
    return {GateKind::RY, {q}, {angle, 0, 0}, {}, {}};
}
GateOp GateOp::rz(std::size_t q, double angle) {
    return {GateKind::RZ, {q}, {angle, 0, 0}, {}, {}};
}
GateOp GateOp::cz(std::size_t a, std::size_t b) {
    return {GateKind::CZ, {a, b}, {}, {}, {}};
}
GateOp GateOp::u3(std::size_t q, double theta, double phi, double lambda) {
    return {GateKind::U3, {q}, {theta, phi, lambda}, {}, {}};
}
GateOp GateOp::pauli_rotation(const PauliString &generator, double angle) {
    if (!generator.is_hermitian()) {
        throw Error("rotation generator must be Hermitian");
    }
    return {GateKind::PauliRotation, {}, {angle, 0, 0}, generator, {}};
}

std::optional<PauliString> GateOp::rotation_generator(std::size_t n_qubits) const {
    switch (kind) {
    case GateKind::RX:
        return PauliString::single(n_qubits, targets.at(0), 'X');
    case GateKind::RY:
        return PauliString::single(n_qubits, targets.at(0), 'Y');
    case GateKind::RZ:
        return PauliString::single(n_qubits, targets.at(0), 'Z');
    case GateKind::PauliRotation:
        return generator;
    default:
        return std::nullopt;
    }
}

Circuit::Circuit(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw DimensionError("circuits support 1..12 qubits");
    }
}

void Circuit::validate(const GateOp &op) const {
    const std::size_t arity = op.kind == GateKind::CZ              ? 2
                              : op.kind == GateKind::PauliRotation ? 0
                                                                   : 1;
    if (op.targets.size() != arity) {
        throw DimensionError("gate has the wrong number of targets");
    }
    check_targets(op, n_);
}

Circuit &Circuit::add(GateOp op) {
    validate(op);
    op.param.reset();
    ops_.push_back(std::move(op));
    return *this;
}

Circuit &Circuit::add_parameterized(GateOp op) {
    validate(op);
    auto gen = op.rotation_generator(n_);
    if (!gen) {
        throw Error("only Pauli rotations can carry trainable parameters");
    }
    op.param = slots_.size();
    slots_.push_back({ops_.size(), *gen});
    ops_.push_back(std::move(op));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.n_ != n_) {
        throw DimensionError("cannot append circuits on different registers");
    }
    const std::size_t op_offset = ops_.size();
    const std::size_t param_offset = slots_.size();
    for (auto op : other.ops_) {
        if (op.param) {
            *op.param += param_offset;
        }
        ops_.push_back(std::move(op));
    }
    for (const auto &s : other.slots_) {
        slots_.push_back({s.op_index + op_offset, s.generator});
    }
    return *this;
}

Mat2 single_qubit_matrix(GateKind kind, const std::array<double, 3> &angles) {
    using namespace std::complex_literals;
    const double c = std::cos(angles[0] / 2);
    const double s = std::sin(angles[0] / 2);
    switch (kind) {
    case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2;
        return {r, r, r, -r};
    }
    case GateKind::RX:
        return {c, -1i * s, -1i * s, c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
        return {std::exp(-0.5i * angles[0]), 0.0, 0.0, std::exp(0.5i * angles[0])};
    case GateKind::U3: {
        const double phi = angles[1];
        const double lam = angles[2];
        return {c, -std::exp(1i * lam) * s, std::exp(1i * phi) * s,
                std::exp(1i * (phi + lam)) * c};
    }
    default:
        throw Error("gate kind has no single-qubit matrix");
    }
}

Mat2 adjoint(const Mat2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat2 multiply(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

void apply_matrix(StateVector &state, std::size_t qubit, const Mat2 &m) {
    const auto n = state.num_qubits();
    if (qubit >= n) {
        throw DimensionError("qubit index out of range");
    }
    const auto bit = qubit_bit(n, qubit);
    auto amps = state.mutable_amplitudes();
    for (std::size_t i0 = 0; i0 < amps.size(); ++i0) {
        if ((i0 & bit) != 0) {
            continue;
        }
        const std::size_t i1 = i0 | bit;
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_pauli_rotation(StateVector &state, const PauliString &generator,
                          double angle) {
    if (generator.num_qubits() != state.num_qubits()) {
        throw DimensionError("generator acts on a different register");
    }
    if (!generator.is_hermitian()) {
        throw Error("rotation generator must be Hermitian");
    }
    // exp(-i a c W / 2) with P = c W, W a unit Hermitian word.
    const double effective = angle * generator.coefficient().real();
    const double c = std::cos(effective / 2);
    const Complex minus_i_s{0.0, -std::sin(effective / 2)};
    const PauliString w = generator.word();
    auto amps = state.mutable_amplitudes();
    const std::vector<Complex> in(amps.begin(), amps.end());
    for (std::size_t b = 0; b < in.size(); ++b) {
        amps[b] = c * in[b];
    }
    for (std::size_t b = 0; b < in.size(); ++b) {
        const auto img = w.apply_to_basis(b);
        amps[img.target] += minus_i_s * img.factor * in[b];
    }
}

void apply_gate_inplace(StateVector &state, const GateOp &gate,
                        const std::array<double, 3> &angles) {
    check_targets(gate, state.num_qubits());
    switch (gate.kind) {
    case GateKind::CZ:
        apply_cz(state, gate.targets.at(0), gate.targets.at(1));
        break;
    case GateKind::PauliRotation:
        apply_pauli_rotation(state, *gate.generator, angles[0]);
        break;
    default:
        if (gate.targets.size() != 1) {
            throw DimensionError("single-qubit gate needs exactly one target");
        }
        apply_matrix(state, gate.targets[0], single_qubit_matrix(gate.kind, angles));
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate) {
    require_normalized(state);
    apply_gate_inplace(state, gate, gate.angles);
    return state;
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> theta,
                        StateVector input) {
    if (theta.size() != circuit.num_params()) {
        throw DimensionError("expected " + std::to_string(circuit.num_params()) +
                             " parameters, got " + std::to_string(theta.size()));
    }
    if (input.num_qubits() != circuit.num_qubits()) {
        throw DimensionError("input state and circuit registers differ");
    }
    require_normalized(input);
    for (const auto &op : circuit.ops()) {
        auto angles = op.angles;
        if (op.param) {
            angles[0] = theta[*op.param];
        }
        apply_gate_inplace(input, op, angles);
    }
    return input;
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> theta) {
    return run_circuit(circuit, theta, StateVector(circuit.num_qubits()));
}

double expectation(const StateVector &state, const PauliString &observable) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw DimensionError("observable acts on a different register");
    }
    if (!observable.is_hermitian()) {
        throw Error("observable must be Hermitian");
    }
    const auto amps = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < amps.size(); ++b) {
        const auto img = observable.apply_to_basis(b);
        acc += std::conj(amps[img.target]) * img.factor * amps[b];
    }
    return acc.real();
}

double expectation(const StateVector &state, const PauliSum &observable) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw DimensionError("observable acts on a different register");
    }
    double acc = 0.0;
    for (const auto &t : observable.terms()) {
        acc += t.coeff * expectation(state, t.word);
    }
    return acc;
}

Eigen::MatrixXcd circuit_unitary(const Circuit &circuit, std::span<const double> theta) {
    const std::size_t dim = std::size_t{1} << circuit.num_qubits();
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::vector<Complex> amps(dim, Complex{0.0, 0.0});
        amps[b] = 1.0;
        const auto out =
            run_circuit(circuit, theta, StateVector(circuit.num_qubits(), std::move(amps)));
        for (std::size_t r = 0; r < dim; ++r) {
            u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) = out[r];
        }
    }
    return u;
}

Eigen::MatrixXcd dense_matrix(const PauliString &p) {
    const std::size_t dim = std::size_t{1} << p.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const auto img = p.apply_to_basis(b);
        m(static_cast<Eigen::Index>(img.target), static_cast<Eigen::Index>(b)) = img.factor;
    }
    return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum &p) {
    const std::size_t dim = std::size_t{1} << p.num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : p.terms()) {
        m += t.coeff * dense_matrix(t.word);
    }
    return m;
}

} // namespace vqcshield::qsim
