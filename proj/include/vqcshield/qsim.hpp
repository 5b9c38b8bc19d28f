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
 * @file qsim.hpp
 * Dense statevector simulation for small registers.
 *
 * Qubit 0 is the most significant bit of the amplitude index. Rotations
 * follow R_P(theta) = exp(-i theta P / 2), so a parameterized slot with
 * Pauli generator P has the effective Hamiltonian P / 2.
 */
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqcshield/pauli.hpp"

namespace vqcshield::qsim {

using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>; // row-major 2x2

inline constexpr std::size_t max_qubits = 12;
inline constexpr double norm_tolerance = 1e-10;

class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);
    /// Throws when the length is not 2^n or the norm deviates from 1.
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] double norm_squared() const;

    /// In-place access for gate kernels. Callers keep the state normalized.
    [[nodiscard]] std::span<Complex> mutable_amplitudes() noexcept { return amps_; }

  private:
    std::size_t n_;
    std::vector<Complex> amps_;
};

enum class GateKind { H, RX, RY, RZ, CZ, U3, PauliRotation };

struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<std::size_t> targets;
    /// RX/RY/RZ/PauliRotation use angles[0]; U3 uses (theta, phi, lambda).
    std::array<double, 3> angles{};
    std::optional<PauliString> generator;
    /// Index into the circuit's parameter vector when trainable.
    std::optional<std::size_t> param;

    static GateOp h(std::size_t q);
    static GateOp rx(std::size_t q, double angle);
    static GateOp ry(std::size_t q, double angle);
    static GateOp rz(std::size_t q, double angle);
    static GateOp cz(std::size_t a, std::size_t b);
    static GateOp u3(std::size_t q, double theta, double phi, double lambda);
    static GateOp pauli_rotation(const PauliString &generator, double angle);

    /// Pauli generator P with gate = exp(-i angle P / 2); empty for H, CZ, U3.
    [[nodiscard]] std::optional<PauliString> rotation_generator(std::size_t n_qubits) const;
    [[nodiscard]] bool is_clifford_fixed() const noexcept {
        return kind == GateKind::H || kind == GateKind::CZ;
    }
};

/// A trainable slot: op index in the circuit and its Pauli generator.
struct ParamSlot {
    std::size_t op_index;
    PauliString generator;
};

class Circuit {
  public:
    explicit Circuit(std::size_t n_qubits);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] const std::vector<GateOp> &ops() const noexcept { return ops_; }
    [[nodiscard]] const std::vector<ParamSlot> &param_slots() const noexcept {
        return slots_;
    }
    [[nodiscard]] std::size_t num_params() const noexcept { return slots_.size(); }

    /// Appends a fixed gate.
    Circuit &add(GateOp op);
    /// Appends a rotation whose angle is the next entry of theta.
    Circuit &add_parameterized(GateOp op);
    /// Appends every op of `other`, re-indexing its parameters after ours.
    Circuit &append(const Circuit &other);

  private:
    void validate(const GateOp &op) const;

    std::size_t n_;
    std::vector<GateOp> ops_;
    std::vector<ParamSlot> slots_;
};

/// 2x2 matrix of a single-qubit gate kind at the given angles.
Mat2 single_qubit_matrix(GateKind kind, const std::array<double, 3> &angles);
Mat2 adjoint(const Mat2 &m);
Mat2 multiply(const Mat2 &a, const Mat2 &b);

void apply_matrix(StateVector &state, std::size_t qubit, const Mat2 &m);
void apply_pauli_rotation(StateVector &state, const PauliString &generator, double angle);

/// Applies a gate with its stored angle. Throws on bad targets or when the
/// input is not normalized.
StateVector apply_gate(StateVector state, const GateOp &gate);
/// Same as apply_gate, in place and with an explicit angle override.
void apply_gate_inplace(StateVector &state, const GateOp &gate,
                        const std::array<double, 3> &angles);

/// Replays the circuit on |0...0> binding trainable angles from theta.
StateVector run_circuit(const Circuit &circuit, std::span<const double> theta);
/// Replays the circuit on a given input state.
StateVector run_circuit(const Circuit &circuit, std::span<const double> theta,
                        StateVector input);

/// <psi|P|psi> for a Hermitian Pauli string.
double expectation(const StateVector &state, const PauliString &observable);
double expectation(const StateVector &state, const PauliSum &observable);

/// Dense 2^n x 2^n unitary of the bound circuit (column b = U|b>).
Eigen::MatrixXcd circuit_unitary(const Circuit &circuit, std::span<const double> theta);

/// Dense matrix of a Pauli string including its coefficient.
Eigen::MatrixXcd dense_matrix(const PauliString &p);
Eigen::MatrixXcd dense_matrix(const PauliSum &p);

} // namespace vqcshield::qsim
