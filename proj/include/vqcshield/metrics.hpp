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
 * @file metrics.hpp
 * Privacy metrics shared by the trainer and the adversary.
 */
#pragma once

#include <span>

namespace vqcshield {

/// (1/D) ||g_real - g_static||^2. Throws on length mismatch.
double weak_privacy_mse(std::span<const double> grad_real, std::span<const double> grad_static);

/// (1/d) ||x_true - x_guess||^2. Throws on length mismatch.
double strong_privacy_mse(std::span<const double> x_true, std::span<const double> x_guess);

} // namespace vqcshield
