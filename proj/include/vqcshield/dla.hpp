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
 * @file dla.hpp
 * Dynamical Lie algebra closure, observable modules, snapshots and the
 * adjoint representation over Pauli-word bases.
 *
 * Basis elements B_a are unit Hermitian Pauli words; the algebra element
 * is i B_a. Distinct words are orthonormal under Tr(P Q) / 2^n.
 */
#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "vqcshield/pauli.hpp"
#include "vqcshield/qsim.hpp"

namespace vqcshield {

inline constexpr std::size_t default_dim_cap = 4096;

class DlaBasis {
  public:
    DlaBasis() = default;
    /// Words are reduced to unit Hermitian form; duplicates are rejected.
    DlaBasis(std::size_t n_qubits, std::vector<PauliString> words);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return words_.size(); }
    [[nodiscard]] const std::vector<PauliString> &words() const noexcept { return words_; }
    [[nodiscard]] const PauliString &word(std::size_t i) const { return words_.at(i); }
    [[nodiscard]] std::optional<std::size_t> index_of(const PauliString &p) const;

    /// Projects O onto the basis: mu_a = Tr(B_a O) / 2^n. The part of O
    /// outside the span is kept as observable_residual().
    void set_observable(const PauliSum &observable);
    [[nodiscard]] const Eigen::VectorXd &mu() const noexcept { return mu_; }
    /// Normalized Hilbert-Schmidt norm of O minus its projection.
    [[nodiscard]] double observable_residual() const noexcept { return residual_; }
    [[nodiscard]] bool spans_observable(double tol = 1e-12) const noexcept {
        return mu_.size() > 0 && residual_ <= tol;
    }

    /// True when [B_a, B_b] lies in the span for every pair.
    [[nodiscard]] bool is_lie_closed() const;
    /// True when [g, B_a] lies in the span for every generator g.
    [[nodiscard]] bool is_invariant_under(std::span<const PauliString> generators) const;

  private:
    std::size_t n_ = 0;
    std::vector<PauliString> words_;
    std::unordered_map<PauliString, std::size_t, PauliWordHash, PauliWordEqual> index_;
    Eigen::VectorXd mu_;
    double residual_ = 0.0;
};

struct SnapshotVector {
    Eigen::VectorXd values;
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(values.size());
    }
};

/**
 * Real Lie closure of {i H_k}: repeated pairwise commutation until no new
 * word appears. Insertion order is deterministic (generators first).
 * Throws DimensionCapExceeded when the basis would exceed dim_cap.
 */
DlaBasis lie_closure(std::span<const PauliString> generators,
                     std::size_t dim_cap = default_dim_cap);

/**
 * Smallest Pauli-word subspace containing every word of `observable` that
 * is closed under commutation with the generators. It holds U^dag O U for
 * every U generated by the rotations, so snapshots over it linearize the
 * model output even when i O is not in the algebra. mu is set from O.
 */
DlaBasis observable_module(std::span<const PauliString> generators,
                           const PauliSum &observable,
                           std::size_t dim_cap = default_dim_cap);

/// [e]_a = <psi|B_a|psi>.
SnapshotVector snapshot(const qsim::StateVector &state, const DlaBasis &basis);

/// Sum_a <psi|B_a|psi>^2.
double generalized_purity(const qsim::StateVector &state, const DlaBasis &basis);

/**
 * M_ab = Tr(B_a U B_b U^dag) / 2^n for the bound circuit. Throws
 * ClosureError when some U B_b U^dag leaves the span by more than 1e-8.
 */
Eigen::MatrixXd adjoint_rep(const qsim::Circuit &circuit, std::span<const double> theta,
                            const DlaBasis &basis);
/// Same, from a precomputed dense unitary.
Eigen::MatrixXd adjoint_rep(const Eigen::MatrixXcd &unitary, const DlaBasis &basis);

/// Tr(P A) for a Pauli string P and dense A in O(2^n).
std::complex<double> pauli_trace(const PauliString &p, const Eigen::MatrixXcd &a);

/// G P G^dag for a fixed Clifford gate (H or CZ); phases stay exact.
PauliString conjugate_by_clifford(const qsim::GateOp &gate, const PauliString &p);

/**
 * An ansatz rewritten as U = F * V(theta): V holds only Pauli rotations
 * whose generators were conjugated through the fixed gates upstream of
 * them, and F is the product of all fixed gates.
 */
struct AbsorbedAnsatz {
    qsim::Circuit rotations;
    std::vector<PauliString> generators;
    std::vector<qsim::GateOp> fixed_gates;

    /// F^dag O F, the observable seen by the rotation-only circuit.
    [[nodiscard]] PauliSum frame_observable(const PauliSum &observable) const;
};

/// Throws when a fixed gate is not H or CZ.
AbsorbedAnsatz absorb_fixed_gates(const qsim::Circuit &ansatz);

} // namespace vqcshield
