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
#include "vqcshield/attacks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "vqcshield/error.hpp"
#include "vqcshield/learn.hpp"
#include "vqcshield/parallel.hpp"

namespace vqcshield {

namespace {

// f_a(theta) = Tr(O U B_a U^dag) / 2^n = Tr(B_a U^dag O U) / 2^n
Eigen::VectorXd snapshot_coefficients(const qsim::Circuit &ansatz,
                                      std::span<const double> theta,
                                      const Eigen::MatrixXcd &observable,
                                      const DlaBasis &basis) {
    const Eigen::MatrixXcd u = qsim::circuit_unitary(ansatz, theta);
    const Eigen::MatrixXcd heis = u.adjoint() * observable * u;
    const double inv = 1.0 / static_cast<double>(heis.rows());
    Eigen::VectorXd f(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t a = 0; a < basis.dim(); ++a) {
        f(static_cast<Eigen::Index>(a)) = pauli_trace(basis.words()[a], heis).real() * inv;
    }
    return f;
}

} // namespace

OmegaMatrix build_omega(const Model &model, const ModelAlgebra &algebra,
                        std::span<const double> theta, const ScramblerSample *assumed_w) {
    if (theta.size() != model.num_params()) {
        throw DimensionError("parameter-count mismatch");
    }
    if (!algebra.basis.is_invariant_under(algebra.absorbed.generators)) {
        throw ClosureError("snapshot basis is not closed under the ansatz generators");
    }
    const PauliSum assumed = model.measured_observable(assumed_w);
    DlaBasis probe = algebra.basis;
    probe.set_observable(algebra.absorbed.frame_observable(assumed));

    const Eigen::MatrixXcd obs = qsim::dense_matrix(assumed);
    const auto d = static_cast<Eigen::Index>(theta.size());
    OmegaMatrix out{Eigen::MatrixXd(d, static_cast<Eigen::Index>(algebra.basis.dim())),
                    probe.observable_residual()};
    std::vector<double> shifted(theta.begin(), theta.end());
    constexpr double shift = std::numbers::pi / 2;
    for (Eigen::Index j = 0; j < d; ++j) {
        const auto k = static_cast<std::size_t>(j);
        shifted[k] = theta[k] + shift;
        const auto plus = snapshot_coefficients(model.ansatz(), shifted, obs, algebra.basis);
        shifted[k] = theta[k] - shift;
        const auto minus = snapshot_coefficients(model.ansatz(), shifted, obs, algebra.basis);
        shifted[k] = theta[k];
        out.omega.row(j) = 0.5 * (plus - minus).transpose();
    }
    return out;
}

RecoverySystem::RecoverySystem(std::size_t snapshot_dim)
    : omega_(0, static_cast<Eigen::Index>(snapshot_dim)), rhs_(0) {}

void RecoverySystem::add_observation(const OmegaMatrix &omega, std::span<const double> grad,
                                     std::span<const double> theta) {
    if (omega.omega.cols() != omega_.cols()) {
        throw DimensionError("omega block has the wrong snapshot dimension");
    }
    if (static_cast<Eigen::Index>(grad.size()) != omega.omega.rows()) {
        throw DimensionError("gradient length does not match omega rows");
    }
    const Eigen::Index r0 = omega_.rows();
    const Eigen::Index dr = omega.omega.rows();
    omega_.conservativeResize(r0 + dr, Eigen::NoChange);
    rhs_.conservativeResize(r0 + dr);
    omega_.bottomRows(dr) = omega.omega;
    for (Eigen::Index i = 0; i < dr; ++i) {
        if (!std::isfinite(grad[static_cast<std::size_t>(i)])) {
            throw DataError("non-finite gradient observation");
        }
        rhs_(r0 + i) = grad[static_cast<std::size_t>(i)];
    }
    if (!omega_.allFinite()) {
        throw DataError("non-finite omega entries");
    }
    theta_used_.emplace_back(theta.begin(), theta.end());
}

RecoveryResult snapshot_recovery(const RecoverySystem &system, double cutoff) {
    if (system.rows() == 0) {
        throw Error("recovery needs at least one gradient observation");
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.omega(),
                                                Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &sv = svd.singularValues();
    const double threshold = sv.size() > 0 ? cutoff * sv(0) : 0.0;
    Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold && sv(i) > 0.0) {
            inv_sv(i) = 1.0 / sv(i);
            ++rank;
        }
    }
    RecoveryResult r;
    r.e_hat.values = svd.matrixV() * inv_sv.asDiagonal() *
                     (svd.matrixU().transpose() * system.rhs());
    r.residual_norm = (system.omega() * r.e_hat.values - system.rhs()).norm();
    r.rank = rank;
    r.rank_deficient = rank < static_cast<std::size_t>(system.omega().cols());
    return r;
}

double inversion_loss(const Model &model, const DlaBasis &basis,
                      const SnapshotVector &e_leak, std::span<const double> x) {
    if (e_leak.size() != basis.dim()) {
        throw DimensionError("leaked snapshot length differs from the basis dimension");
    }
    return (snapshot(model.encode(x), basis).values - e_leak.values).squaredNorm();
}

std::vector<AttackRecord> snapshot_inversion(const Model &model, const DlaBasis &basis,
                                             const SnapshotVector &e_leak,
                                             std::span<const double> x_true,
                                             std::span<const double> x_init,
                                             const InversionSettings &settings) {
    if (e_leak.size() != basis.dim()) {
        throw DimensionError("leaked snapshot length differs from the basis dimension");
    }
    if (x_true.size() != x_init.size()) {
        throw DimensionError("x_true and x_init differ in length");
    }
    std::vector<double> x(x_init.begin(), x_init.end());
    OptimizerState opt(x.size(), AdamSettings{settings.lr, 0.9, 0.999, 1e-8});
    std::vector<AttackRecord> out;
    out.reserve(settings.iters + 1);
    auto record = [&](std::size_t it) {
        out.push_back({it, x, inversion_loss(model, basis, e_leak, x),
                       strong_privacy_mse(x_true, x)});
    };
    record(0);
    std::vector<double> grad(x.size());
    std::vector<double> probe(x.size());
    const double h = settings.fd_step;
    for (std::size_t it = 1; it <= settings.iters; ++it) {
        // A zero sum of squares is a stationary point; the difference
        // quotient there is pure truncation error.
        if (out.back().inversion_loss == 0.0) {
            std::fill(grad.begin(), grad.end(), 0.0);
        }
        for (std::size_t i = 0; i < x.size() && out.back().inversion_loss != 0.0; ++i) {
            probe = x;
            probe[i] = x[i] + h;
            const double up = inversion_loss(model, basis, e_leak, probe);
            probe[i] = x[i] - h;
            const double down = inversion_loss(model, basis, e_leak, probe);
            grad[i] = (up - down) / (2.0 * h);
        }
        x = adam_step(opt, grad, x);
        for (auto &v : x) {
            v = std::clamp(v, 0.0, input_domain_max);
        }
        record(it);
    }
    return out;
}

std::optional<std::vector<double>> draw_far_init(std::span<const double> x_true,
                                                 std::mt19937_64 &rng, double lo, double hi,
                                                 std::size_t max_tries) {
    std::uniform_real_distribution<double> u(0.0, input_domain_max);
    std::vector<double> x(x_true.size());
    for (std::size_t t = 0; t < max_tries; ++t) {
        for (auto &v : x) {
            v = u(rng);
        }
        const double mse = strong_privacy_mse(x_true, x);
        if (mse >= lo && mse <= hi) {
            return x;
        }
    }
    return std::nullopt;
}

std::size_t count_strict_local_minima(std::span<const double> values, std::size_t grid) {
    if (values.size() != grid * grid) {
        throw DimensionError("landscape is not grid x grid");
    }
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < grid; ++i) {
        for (std::size_t j = 1; j + 1 < grid; ++j) {
            const double c = values[i * grid + j];
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) {
                        continue;
                    }
                    const auto ni = static_cast<std::size_t>(static_cast<long>(i) + di);
                    const auto nj = static_cast<std::size_t>(static_cast<long>(j) + dj);
                    if (!(c < values[ni * grid + nj])) {
                        minimum = false;
                        break;
                    }
                }
            }
            count += minimum ? 1 : 0;
        }
    }
    return count;
}

Landscape scan_grid(const std::function<double(std::span<const double>)> &fn,
                    std::size_t grid, double lo, double hi) {
    if (grid < 8) {
        throw Error("landscape grid must be at least 8 x 8");
    }
    Landscape l;
    l.grid = grid;
    l.axis.resize(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        l.axis[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    }
    l.values.assign(grid * grid, 0.0);
    parallel_for(grid * grid, [&](std::size_t cell) {
        const std::array<double, 2> x{l.axis[cell / grid], l.axis[cell % grid]};
        l.values[cell] = fn(x);
    });
    l.local_minima = count_strict_local_minima(l.values, grid);
    return l;
}

Landscape landscape_scan(const Model &model, const DlaBasis &basis,
                         const SnapshotVector &e_leak, std::size_t grid) {
    if (model.config().feature_dim != 2) {
        throw DimensionError("landscape scans need exactly 2 input features");
    }
    return scan_grid(
        [&](std::span<const double> x) { return inversion_loss(model, basis, e_leak, x); },
        grid);
}

} // namespace vqcshield
