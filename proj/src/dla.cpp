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
#include "vqcshield/dla.hpp"

#include <bit>
#include <cmath>

#include "vqcshield/error.hpp"

namespace vqcshield {

using qsim::GateKind;
using qsim::GateOp;

DlaBasis::DlaBasis(std::size_t n_qubits, std::vector<PauliString> words) : n_(n_qubits) {
    words_.reserve(words.size());
    for (const auto &w : words) {
        if (w.num_qubits() != n_qubits) {
            throw DimensionError("basis word acts on a different register");
        }
        const auto unit = w.word();
        if (!index_.emplace(unit, words_.size()).second) {
            throw Error("duplicate word " + unit.label() + " in basis");
        }
        words_.push_back(unit);
    }
}

std::optional<std::size_t> DlaBasis::index_of(const PauliString &p) const {
    const auto it = index_.find(p);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void DlaBasis::set_observable(const PauliSum &observable) {
    if (observable.num_qubits() != n_) {
        throw DimensionError("observable acts on a different register");
    }
    mu_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim()));
    double outside = 0.0;
    for (const auto &t : observable.terms()) {
        if (auto idx = index_of(t.word)) {
            mu_(static_cast<Eigen::Index>(*idx)) += t.coeff;
        } else {
            outside += t.coeff * t.coeff;
        }
    }
    residual_ = std::sqrt(outside);
}

bool DlaBasis::is_lie_closed() const {
    for (std::size_t a = 0; a < words_.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            if (auto c = commutator(words_[a], words_[b]); c && !index_of(*c)) {
                return false;
            }
        }
    }
    return true;
}

bool DlaBasis::is_invariant_under(std::span<const PauliString> generators) const {
    for (const auto &g : generators) {
        for (const auto &w : words_) {
            if (auto c = commutator(g, w); c && !index_of(*c)) {
                return false;
            }
        }
    }
    return true;
}

DlaBasis lie_closure(std::span<const PauliString> generators, std::size_t dim_cap) {
    if (generators.empty()) {
        throw Error("lie_closure needs at least one generator");
    }
    const std::size_t n = generators.front().num_qubits();
    std::vector<PauliString> words;
    std::unordered_map<PauliString, std::size_t, PauliWordHash, PauliWordEqual> seen;
    auto insert = [&](const PauliString &p) {
        if (p.num_qubits() != n) {
            throw DimensionError("generators act on different registers");
        }
        const auto w = p.word();
        if (seen.emplace(w, words.size()).second) {
            words.push_back(w);
            if (words.size() > dim_cap) {
                throw DimensionCapExceeded(dim_cap, words.size());
            }
        }
    };
    for (const auto &g : generators) {
        insert(g);
    }
    // Every new word is commuted against all earlier ones when its turn comes.
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (auto c = commutator(words[j], words[i])) {
                insert(*c);
            }
        }
    }
    return {n, std::move(words)};
}

DlaBasis observable_module(std::span<const PauliString> generators,
                           const PauliSum &observable, std::size_t dim_cap) {
    const std::size_t n = observable.num_qubits();
    std::vector<PauliString> words;
    std::unordered_map<PauliString, std::size_t, PauliWordHash, PauliWordEqual> seen;
    auto insert = [&](const PauliString &p) {
        const auto w = p.word();
        if (seen.emplace(w, words.size()).second) {
            words.push_back(w);
            if (words.size() > dim_cap) {
                throw DimensionCapExceeded(dim_cap, words.size());
            }
        }
    };
    for (const auto &t : observable.terms()) {
        if (t.coeff != 0.0) {
            insert(t.word);
        }
    }
    for (const auto &g : generators) {
        if (g.num_qubits() != n) {
            throw DimensionError("generator and observable registers differ");
        }
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (const auto &g : generators) {
            if (auto c = commutator(g, words[i])) {
                insert(*c);
            }
        }
    }
    DlaBasis basis(n, std::move(words));
    basis.set_observable(observable);
    return basis;
}

SnapshotVector snapshot(const qsim::StateVector &state, const DlaBasis &basis) {
    if (state.num_qubits() != basis.num_qubits()) {
        throw DimensionError("state and basis registers differ");
    }
    SnapshotVector e{Eigen::VectorXd(static_cast<Eigen::Index>(basis.dim()))};
    for (std::size_t a = 0; a < basis.dim(); ++a) {
        e.values(static_cast<Eigen::Index>(a)) = qsim::expectation(state, basis.word(a));
    }
    return e;
}

double generalized_purity(const qsim::StateVector &state, const DlaBasis &basis) {
    return snapshot(state, basis).values.squaredNorm();
}

std::complex<double> pauli_trace(const PauliString &p, const Eigen::MatrixXcd &a) {
    // Tr(P A) = sum_c <c|P A|c>, and P^T has one entry per column.
    std::complex<double> acc{0.0, 0.0};
    const auto dim = static_cast<std::size_t>(a.rows());
    for (std::size_t c = 0; c < dim; ++c) {
        const auto img = p.apply_to_basis(c); // P|c> = f |t>, so P_{t,c} = f
        acc += img.factor * a(static_cast<Eigen::Index>(c),
                              static_cast<Eigen::Index>(img.target));
    }
    return acc;
}

Eigen::MatrixXd adjoint_rep(const Eigen::MatrixXcd &unitary, const DlaBasis &basis) {
    const auto dim_h = static_cast<std::size_t>(unitary.rows());
    if (dim_h != (std::size_t{1} << basis.num_qubits())) {
        throw DimensionError("unitary and basis registers differ");
    }
    const auto d = static_cast<Eigen::Index>(basis.dim());
    const double inv = 1.0 / static_cast<double>(dim_h);
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
        const Eigen::MatrixXcd conj =
            unitary * qsim::dense_matrix(basis.word(static_cast<std::size_t>(b))) *
            unitary.adjoint();
        Eigen::MatrixXcd residual = conj;
        for (Eigen::Index a = 0; a < d; ++a) {
            const auto &w = basis.word(static_cast<std::size_t>(a));
            const double coef = pauli_trace(w, conj).real() * inv;
            m(a, b) = coef;
            if (coef == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < dim_h; ++c) {
                const auto img = w.apply_to_basis(c);
                residual(static_cast<Eigen::Index>(img.target),
                         static_cast<Eigen::Index>(c)) -= coef * img.factor;
            }
        }
        const double leak = residual.norm() * std::sqrt(inv);
        if (leak > 1e-8) {
            throw ClosureError("basis is not closed under the circuit's conjugation: " +
                               basis.word(static_cast<std::size_t>(b)).label() +
                               " leaks " + std::to_string(leak));
        }
    }
    return m;
}

Eigen::MatrixXd adjoint_rep(const qsim::Circuit &circuit, std::span<const double> theta,
                            const DlaBasis &basis) {
    if (circuit.num_qubits() != basis.num_qubits()) {
        throw DimensionError("circuit and basis registers differ");
    }
    return adjoint_rep(qsim::circuit_unitary(circuit, theta), basis);
}

namespace {

// Images of X_q and Z_q under conjugation by a fixed Clifford gate.
PauliString image_of_x(const GateOp &g, std::size_t n, std::size_t q) {
    if (g.kind == GateKind::H) {
        return PauliString::single(n, q, g.targets[0] == q ? 'Z' : 'X');
    }
    const auto a = g.targets[0];
    const auto b = g.targets[1];
    const auto x = PauliString::single(n, q, 'X');
    if (q == a) {
        return x * PauliString::single(n, b, 'Z');
    }
    if (q == b) {
        return PauliString::single(n, a, 'Z') * x;
    }
    return x;
}

PauliString image_of_z(const GateOp &g, std::size_t n, std::size_t q) {
    if (g.kind == GateKind::H && g.targets[0] == q) {
        return PauliString::single(n, q, 'X');
    }
    return PauliString::single(n, q, 'Z');
}

} // namespace

PauliString conjugate_by_clifford(const GateOp &gate, const PauliString &p) {
    if (!gate.is_clifford_fixed()) {
        throw Error("only H and CZ can be conjugated symbolically");
    }
    const std::size_t n = p.num_qubits();
    // P = scale * i^{phase + |x&z|} X^x Z^z
    const int extra = std::popcount(p.x_mask() & p.z_mask());
    PauliString out(n, 0, 0, p.phase() + extra, p.scale());
    for (std::size_t q = 0; q < n; ++q) {
        if (p.op(q) == 'X' || p.op(q) == 'Y') {
            out = out * image_of_x(gate, n, q);
        }
    }
    for (std::size_t q = 0; q < n; ++q) {
        if (p.op(q) == 'Z' || p.op(q) == 'Y') {
            out = out * image_of_z(gate, n, q);
        }
    }
    return out;
}

namespace {

PauliString pull_through(std::span<const GateOp> fixed, PauliString p) {
    // F^dag P F with F = G_k ... G_1; each G here is self-inverse.
    for (auto it = fixed.rbegin(); it != fixed.rend(); ++it) {
        p = conjugate_by_clifford(*it, p);
    }
    return p;
}

} // namespace

PauliSum AbsorbedAnsatz::frame_observable(const PauliSum &observable) const {
    PauliSum out(observable.num_qubits());
    for (const auto &t : observable.terms()) {
        out.add(t.coeff, pull_through(fixed_gates, t.word));
    }
    return out;
}

AbsorbedAnsatz absorb_fixed_gates(const qsim::Circuit &ansatz) {
    const std::size_t n = ansatz.num_qubits();
    AbsorbedAnsatz out{qsim::Circuit(n), {}, {}};
    for (const auto &op : ansatz.ops()) {
        if (op.param) {
            auto gen = op.rotation_generator(n);
            const auto pulled = pull_through(out.fixed_gates, *gen);
            out.rotations.add_parameterized(GateOp::pauli_rotation(pulled, 0.0));
            out.generators.push_back(pulled);
        } else if (op.is_clifford_fixed()) {
            out.fixed_gates.push_back(op);
        } else {
            throw Error("cannot absorb a fixed non-Clifford gate into the frame");
        }
    }
    return out;
}

} // namespace vqcshield
