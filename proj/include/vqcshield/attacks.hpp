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
 * @file attacks.hpp
 * Snapshot recovery from shared gradients, snapshot inversion back to the
 * input, and the inversion-landscape scanner.
 */
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqcshield/dla.hpp"
#include "vqcshield/metrics.hpp"
#include "vqcshield/models.hpp"

namespace vqcshield {

struct OmegaMatrix {
    /// D x dim(basis); row j holds d/d theta_j of Tr(O U B_a U^dag) / 2^n.
    Eigen::MatrixXd omega;
    /// Norm of the assumed observable's component outside the basis.
    double lasa_residual = 0.0;
};

/**
 * Coefficients linking output gradients to snapshots for an adversary that
 * assumes the measured observable is W^dag O W (O itself when assumed_w is
 * null). Throws ClosureError when the basis is not invariant under the
 * ansatz generators.
 */
OmegaMatrix build_omega(const Model &model, const ModelAlgebra &algebra,
                        std::span<const double> theta,
                        const ScramblerSample *assumed_w = nullptr);

/// Stacked gradient observations: omega * e = rhs.
class RecoverySystem {
  public:
    explicit RecoverySystem(std::size_t snapshot_dim);

    void add_observation(const OmegaMatrix &omega, std::span<const double> grad,
                         std::span<const double> theta);

    [[nodiscard]] std::size_t rows() const noexcept {
        return static_cast<std::size_t>(omega_.rows());
    }
    [[nodiscard]] const Eigen::MatrixXd &omega() const noexcept { return omega_; }
    [[nodiscard]] const Eigen::VectorXd &rhs() const noexcept { return rhs_; }
    [[nodiscard]] const std::vector<std::vector<double>> &theta_used() const noexcept {
        return theta_used_;
    }

  private:
    Eigen::MatrixXd omega_;
    Eigen::VectorXd rhs_;
    std::vector<std::vector<double>> theta_used_;
};

struct RecoveryResult {
    SnapshotVector e_hat;
    /// ||omega e_hat - rhs||
    double residual_norm = 0.0;
    std::size_t rank = 0;
    bool rank_deficient = false;

    /// An inconsistent system is what the scrambler produces.
    [[nodiscard]] bool consistent(double tol = 1e-3) const noexcept {
        return residual_norm <= tol;
    }
};

/// Minimum-norm least squares through an SVD with relative cutoff.
RecoveryResult snapshot_recovery(const RecoverySystem &system, double cutoff = 1e-10);

struct AttackRecord {
    std::size_t iteration;
    std::vector<double> x_guess;
    double inversion_loss;
    double mse_strong;
};

struct InversionSettings {
    std::size_t iters = 300;
    double lr = 0.1;
    double fd_step = 1e-4;
};

/// ||snapshot(encode(x)) - e_leak||^2 for x in scaled coordinates.
double inversion_loss(const Model &model, const DlaBasis &basis,
                      const SnapshotVector &e_leak, std::span<const double> x);

/**
 * Adam on the inversion loss with central-difference gradients; iterates
 * are projected back onto [0, pi]^d. Record 0 is the initial guess, so the
 * result has iters + 1 entries.
 */
std::vector<AttackRecord> snapshot_inversion(const Model &model, const DlaBasis &basis,
                                             const SnapshotVector &e_leak,
                                             std::span<const double> x_true,
                                             std::span<const double> x_init,
                                             const InversionSettings &settings = {});

/**
 * Uniform draws in [0, pi]^d, redrawn until strong_privacy_mse to x_true
 * lies in [lo, hi]. Empty when max_tries draws all miss.
 */
std::optional<std::vector<double>> draw_far_init(std::span<const double> x_true,
                                                 std::mt19937_64 &rng, double lo = 2.0,
                                                 double hi = 3.0,
                                                 std::size_t max_tries = 100000);

struct Landscape {
    std::size_t grid = 0;
    std::vector<double> axis;
    /// Row-major: values[i * grid + j] at (axis[i], axis[j]).
    std::vector<double> values;
    std::size_t local_minima = 0;
};

/// Interior cells strictly below all 8 neighbours.
std::size_t count_strict_local_minima(std::span<const double> values, std::size_t grid);

/// Evaluates fn on a grid x grid lattice over [lo, hi]^2. Throws for grid < 8.
Landscape scan_grid(const std::function<double(std::span<const double>)> &fn,
                    std::size_t grid, double lo = 0.0, double hi = input_domain_max);

/// Inversion loss over [0, pi]^2. Throws unless the model has 2 features.
Landscape landscape_scan(const Model &model, const DlaBasis &basis,
                         const SnapshotVector &e_leak, std::size_t grid);

} // namespace vqcshield
