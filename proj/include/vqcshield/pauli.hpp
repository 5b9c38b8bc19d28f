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
 * @file pauli.hpp
 * Pauli words in symplectic (x-mask, z-mask) form with exact phases.
 *
 * Bit convention: qubit q of an n-qubit word is stored at mask bit
 * (n - 1 - q), the same bit that addresses qubit q in a statevector index.
 * The label "XZI" therefore has x_mask = 0b100 and z_mask = 0b010.
 *
 * A PauliString represents scale * i^phase * W(x, z), where W is the
 * Hermitian tensor product of {I, X, Y, Z} factors and Y = i X Z.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vqcshield {

class PauliString {
  public:
    static constexpr std::size_t max_qubits = 64;

    PauliString() = default;
    PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                int phase = 0, double scale = 1.0);

    /// Parses labels such as "XZI", "-YYI", "+iZ", "-iXX".
    static PauliString parse(std::string_view label);
    static PauliString identity(std::size_t n_qubits);
    /// Single-qubit factor ('I', 'X', 'Y' or 'Z') on qubit q.
    static PauliString single(std::size_t n_qubits, std::size_t qubit, char op);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::uint64_t x_mask() const noexcept { return x_; }
    [[nodiscard]] std::uint64_t z_mask() const noexcept { return z_; }
    /// Power of i in {0, 1, 2, 3}.
    [[nodiscard]] int phase() const noexcept { return phase_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] std::complex<double> coefficient() const;

    /// The unit-coefficient Hermitian word with the same masks.
    [[nodiscard]] PauliString word() const;
    [[nodiscard]] bool is_hermitian() const noexcept { return phase_ % 2 == 0; }
    [[nodiscard]] bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
    [[nodiscard]] bool same_word(const PauliString &other) const noexcept {
        return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
    }

    /// Factor on qubit q: one of 'I', 'X', 'Y', 'Z'.
    [[nodiscard]] char op(std::size_t qubit) const;
    /// Word label without phase, e.g. "XZI".
    [[nodiscard]] std::string label() const;
    /// Label including the coefficient when it is not +1, e.g. "-2i*YX".
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t weight() const noexcept;

    [[nodiscard]] bool commutes_with(const PauliString &other) const;

    /// Exact product; phases combine as integer powers of i.
    [[nodiscard]] PauliString operator*(const PauliString &other) const;
    [[nodiscard]] PauliString operator-() const;
    [[nodiscard]] PauliString scaled(double factor) const;

    /**
     * Action on a computational basis state: P|b> = factor * |target>.
     */
    struct BasisImage {
        std::uint64_t target;
        std::complex<double> factor;
    };
    [[nodiscard]] BasisImage apply_to_basis(std::uint64_t basis_index) const;

    friend bool operator==(const PauliString &a, const PauliString &b) noexcept {
        return a.same_word(b) && a.phase_ == b.phase_ && a.scale_ == b.scale_;
    }

  private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
    double scale_ = 1.0;
};

/// [p, q] = pq - qp. Empty when the words commute.
std::optional<PauliString> commutator(const PauliString &p, const PauliString &q);

/// Hash on (n, x, z), ignoring the coefficient.
struct PauliWordHash {
    std::size_t operator()(const PauliString &p) const noexcept;
};
struct PauliWordEqual {
    bool operator()(const PauliString &a, const PauliString &b) const noexcept {
        return a.same_word(b);
    }
};

/// One real-weighted Hermitian word of an observable.
struct PauliTerm {
    double coeff;
    PauliString word;
};

/**
 * Real linear combination of Hermitian Pauli words. Terms are kept in
 * insertion order with duplicate words merged.
 */
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::size_t n_qubits) : n_(n_qubits) {}
    /// Wraps a Hermitian PauliString (scale and sign become the weight).
    explicit PauliSum(const PauliString &p);

    void add(double coeff, const PauliString &word);
    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    /// Coefficient of a word, 0 when absent.
    [[nodiscard]] double coefficient_of(const PauliString &word) const;
    /// Tr(O^2) / 2^n for the Hermitian sum.
    [[nodiscard]] double normalized_hs_norm2() const;
    /// Drops terms with |coeff| <= tol.
    [[nodiscard]] PauliSum pruned(double tol) const;

  private:
    std::size_t n_ = 0;
    std::vector<PauliTerm> terms_;
};

} // namespace vqcshield
