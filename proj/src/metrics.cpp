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
#include "vqcshield/metrics.hpp"

#include "vqcshield/error.hpp"

namespace vqcshield {

namespace {

double mean_squared_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DimensionError("vectors have different lengths");
    }
    if (a.empty()) {
        throw DimensionError("vectors are empty");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

} // namespace

double weak_privacy_mse(std::span<const double> grad_real, std::span<const double> grad_static) {
    return mean_squared_difference(grad_real, grad_static);
}

double strong_privacy_mse(std::span<const double> x_true, std::span<const double> x_guess) {
    return mean_squared_difference(x_true, x_guess);
}

} // namespace vqcshield
