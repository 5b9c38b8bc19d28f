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
#include "vqcshield/pauli.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "vqcshield/error.hpp"

namespace vqcshield {

namespace {

int popcount(std::uint64_t v) { return std::popcount(v); }

int mod4(int v) { return ((v % 4) + 4) % 4; }

std::uint64_t qubit_bit(std::size_t n, std::size_t q) {
    return std::uint64_t{1} << (n - 1 - q);
}

std::complex<double> i_power(int k) {
    switch (mod4(k)) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

} // namespace

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, int phase, double scale)
    : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(mod4(phase)), scale_(scale) {
    if (n_qubits > max_qubits) {
        throw DimensionError("PauliString supports at most 64 qubits");
    }
    const std::uint64_t valid =
        n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
    if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
        throw DimensionError("Pauli mask has bits beyond n_qubits");
    }
}

PauliString PauliString::parse(std::string_view label) {
    int phase = 0;
    if (!label.empty() && (label.front() == '+' || label.front() == '-')) {
        if (label.front() == '-') {
            phase += 2;
        }
        label.remove_prefix(1);
    }
    if (!label.empty() && label.front() == 'i') {
        phase += 1;
        label.remove_prefix(1);
    }
    if (label.empty()) {
        throw Error("empty Pauli label");
    }
    const std::size_t n = label.size();
    PauliString p(n, 0, 0, 0);
    for (std::size_t q = 0; q < n; ++q) {
        const auto bit = qubit_bit(n, q);
        switch (label[q]) {
        case 'I':
            break;
        case 'X':
            p.x_ |= bit;
            break;
        case 'Y':
            p.x_ |= bit;
            p.z_ |= bit;
            break;
        case 'Z':
            p.z_ |= bit;
            break;
        default:
            throw Error("invalid Pauli character '" + std::string(1, label[q]) +
                        "'");
        }
    }
    p.phase_ = mod4(phase);
    return p;
}

PauliString PauliString::identity(std::size_t n_qubits) {
    return {n_qubits, 0, 0};
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, char op) {
    if (qubit >= n_qubits) {
        throw DimensionError("qubit index out of range");
    }
    const auto bit = qubit_bit(n_qubits, qubit);
    switch (op) {
    case 'I':
        return {n_qubits, 0, 0};
    case 'X':
        return {n_qubits, bit, 0};
    case 'Y':
        return {n_qubits, bit, bit};
    case 'Z':
        return {n_qubits, 0, bit};
    default:
        throw Error("invalid Pauli character");
    }
}

std::complex<double> PauliString::coefficient() const {
    return scale_ * i_power(phase_);
}

PauliString PauliString::word() const { return {n_, x_, z_}; }

char PauliString::op(std::size_t qubit) const {
    if (qubit >= n_) {
        throw DimensionError("qubit index out of range");
    }
    const auto bit = qubit_bit(n_, qubit);
    const bool x = (x_ & bit) != 0;
    const bool z = (z_ & bit) != 0;
    if (x && z) {
        return 'Y';
    }
    if (x) {
        return 'X';
    }
    return z ? 'Z' : 'I';
}

std::string PauliString::label() const {
    std::string s(n_, 'I');
    for (std::size_t q = 0; q < n_; ++q) {
        s[q] = op(q);
    }
    return s;
}

std::string PauliString::to_string() const {
    std::ostringstream os;
    if (phase_ >= 2) {
        os << '-';
    }
    if (scale_ != 1.0) {
        os << scale_;
    }
    if (phase_ % 2 == 1) {
        os << 'i';
    }
    if (scale_ != 1.0 || phase_ % 2 == 1) {
        os << '*';
    }
    os << label();
    return os.str();
}

std::size_t PauliString::weight() const noexcept {
    return static_cast<std::size_t>(popcount(x_ | z_));
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (n_ != other.n_) {
        throw DimensionError("Pauli strings act on different qubit counts");
    }
    return (popcount(x_ & other.z_) + popcount(z_ & other.x_)) % 2 == 0;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (n_ != other.n_) {
        throw DimensionError("Pauli strings act on different qubit counts");
    }
    const std::uint64_t x3 = x_ ^ other.x_;
    const std::uint64_t z3 = z_ ^ other.z_;
    // W1 W2 = i^{|x1z1| + |x2z2| + 2|z1x2| - |x3z3|} W3
    const int word_phase = popcount(x_ & z_) + popcount(other.x_ & other.z_) +
                           2 * popcount(z_ & other.x_) - popcount(x3 & z3);
    return {n_, x3, z3, phase_ + other.phase_ + word_phase, scale_ * other.scale_};
}

PauliString PauliString::operator-() const { return {n_, x_, z_, phase_ + 2, scale_}; }

PauliString PauliString::scaled(double factor) const {
    if (factor < 0) {
        return {n_, x_, z_, phase_ + 2, -factor * scale_};
    }
    return {n_, x_, z_, phase_, factor * scale_};
}

PauliString::BasisImage PauliString::apply_to_basis(std::uint64_t basis_index) const {
    const int k = phase_ + popcount(x_ & z_) + 2 * popcount(basis_index & z_);
    return {basis_index ^ x_, scale_ * i_power(k)};
}

std::optional<PauliString> commutator(const PauliString &p, const PauliString &q) {
    if (p.commutes_with(q)) {
        return std::nullopt;
    }
    return (p * q).scaled(2.0);
}

std::size_t PauliWordHash::operator()(const PauliString &p) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(p.x_mask());
    h ^= std::hash<std::uint64_t>{}(p.z_mask()) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
    h ^= p.num_qubits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

PauliSum::PauliSum(const PauliString &p) : n_(p.num_qubits()) {
    if (!p.is_hermitian()) {
        throw Error("observable word must be Hermitian (real coefficient)");
    }
    add(p.coefficient().real(), p.word());
}

void PauliSum::add(double coeff, const PauliString &word) {
    if (terms_.empty() && n_ == 0) {
        n_ = word.num_qubits();
    }
    if (word.num_qubits() != n_) {
        throw DimensionError("PauliSum term acts on a different qubit count");
    }
    if (!word.is_hermitian()) {
        throw Error("PauliSum terms must be Hermitian");
    }
    const double c = coeff * word.coefficient().real();
    for (auto &t : terms_) {
        if (t.word.same_word(word)) {
            t.coeff += c;
            return;
        }
    }
    terms_.push_back({c, word.word()});
}

double PauliSum::coefficient_of(const PauliString &word) const {
    for (const auto &t : terms_) {
        if (t.word.same_word(word)) {
            return t.coeff;
        }
    }
    return 0.0;
}

double PauliSum::normalized_hs_norm2() const {
    double s = 0.0;
    for (const auto &t : terms_) {
        s += t.coeff * t.coeff;
    }
    return s;
}

PauliSum PauliSum::pruned(double tol) const {
    PauliSum out(n_);
    for (const auto &t : terms_) {
        if (std::abs(t.coeff) > tol) {
            out.terms_.push_back(t);
        }
    }
    return out;
}

} // namespace vqcshield
