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
#pragma once

#include <stdexcept>
#include <string>

namespace vqcshield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Qubit index, qubit count, or vector length does not match.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A Lie closure grew past its dimension cap.
class DimensionCapExceeded : public Error {
  public:
    DimensionCapExceeded(std::size_t cap, std::size_t reached)
        : Error("Lie closure exceeded dim_cap=" + std::to_string(cap) +
                " (reached " + std::to_string(reached) + ")"),
          cap_(cap), reached_(reached) {}
    [[nodiscard]] std::size_t cap() const noexcept { return cap_; }
    [[nodiscard]] std::size_t reached() const noexcept { return reached_; }

  private:
    std::size_t cap_;
    std::size_t reached_;
};

/// A basis is not closed under the requested conjugation.
class ClosureError : public Error {
  public:
    using Error::Error;
};

/// Input data cannot be processed (degenerate range, malformed CSV, ...).
class DataError : public Error {
  public:
    using Error::Error;
};

} // namespace vqcshield
