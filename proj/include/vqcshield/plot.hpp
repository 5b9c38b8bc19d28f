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
 * @file plot.hpp
 * Gnuplot data/scripts and static SVG figures from the experiment CSVs.
 */
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vqcshield {

enum class FigureKind { Loss, WeakPrivacy, StrongPrivacy, Landscape };

struct PlotArtifact {
    FigureKind kind;
    std::filesystem::path data_file;   // gnuplot .dat
    std::filesystem::path script_file; // gnuplot .gp
    std::filesystem::path svg_file;    // empty when SVG output is off
    std::size_t rows = 0;              // heatmap rows, or series count
    std::size_t cols = 0;              // heatmap cols, or points in the longest series
    bool log_y = false;
    double y_min = 0.0;
    double y_max = 0.0;
};

struct LogBounds {
    double lo;
    double hi;
};

/// Decade-aligned bounds covering the positive values and at least
/// [1e-17, 1e-1].
LogBounds weak_log_bounds(std::span<const double> values);

/**
 * One artifact per input CSV; the figure is chosen from the header. All
 * inputs are parsed before anything is written, so a malformed or empty CSV
 * raises DataError and leaves no output behind.
 */
std::vector<PlotArtifact> emit_plot_data(std::span<const std::filesystem::path> csv_files,
                                         const std::filesystem::path &out_dir,
                                         bool svg = true);

} // namespace vqcshield
