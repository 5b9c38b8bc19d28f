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
#include "vqcshield/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "vqcshield/csv.hpp"
#include "vqcshield/error.hpp"

namespace vqcshield {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 130.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ParsedFigure {
    FigureKind kind;
    std::string stem;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    // heatmap
    std::vector<double> axis0;
    std::vector<double> axis1;
    std::vector<double> grid;
};

bool has_columns(const CsvTable &t, std::initializer_list<const char *> cols) {
    if (t.header.size() != cols.size()) {
        return false;
    }
    std::size_t i = 0;
    for (const char *c : cols) {
        if (t.header[i++] != c) {
            return false;
        }
    }
    return true;
}

std::vector<Series> group_series(const CsvTable &t, std::size_t xcol, std::size_t ycol) {
    const std::size_t vcol = t.column("variant");
    std::vector<Series> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const std::string &name = t.rows[r][vcol];
        if (name.empty()) {
            throw DataError(t.source + ": row " + std::to_string(r + 2) + ", column " +
                            std::to_string(vcol + 1) + " ('variant'): empty");
        }
        auto [it, fresh] = index.emplace(name, out.size());
        if (fresh) {
            out.push_back({name, {}, {}});
        }
        out[it->second].x.push_back(t.number(r, xcol));
        out[it->second].y.push_back(t.number(r, ycol));
    }
    return out;
}

ParsedFigure parse_figure(const std::filesystem::path &path) {
    const CsvTable t = read_csv(path);
    ParsedFigure f;
    f.stem = path.stem().string();
    if (has_columns(t, {"step", "variant", "loss", "mse_weak"})) {
        f.kind = FigureKind::Loss;
        f.x_label = "training step";
        f.y_label = "loss";
        f.series = group_series(t, 0, 2);
    } else if (has_columns(t, {"step", "variant", "mse_weak", "recovery_residual",
                               "recovered_snapshot_mse"})) {
        f.kind = FigureKind::WeakPrivacy;
        f.x_label = "training step";
        f.y_label = "gradient mse";
        f.series = group_series(t, 0, 2);
    } else if (has_columns(t, {"iter", "variant", "inversion_loss", "mse_strong"})) {
        f.kind = FigureKind::StrongPrivacy;
        f.x_label = "attack iteration";
        f.y_label = "input mse";
        f.series = group_series(t, 0, 3);
    } else if (has_columns(t, {"x0", "x1", "loss"})) {
        f.kind = FigureKind::Landscape;
        f.x_label = "x1";
        f.y_label = "x0";
        const auto g = static_cast<std::size_t>(std::llround(std::sqrt(t.rows.size())));
        if (g * g != t.rows.size() || g < 2) {
            throw DataError(t.source + ": " + std::to_string(t.rows.size()) +
                            " rows do not form a square grid");
        }
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const double x0 = t.number(r, 0);
            const double x1 = t.number(r, 1);
            f.grid.push_back(t.number(r, 2));
            if (r % g == 0) {
                f.axis0.push_back(x0);
            } else if (x0 != f.axis0.back()) {
                throw DataError(t.source + ": row " + std::to_string(r + 2) +
                                ", column 1 ('x0'): breaks row-major order");
            }
            if (r < g) {
                f.axis1.push_back(x1);
            } else if (x1 != f.axis1[r % g]) {
                throw DataError(t.source + ": row " + std::to_string(r + 2) +
                                ", column 2 ('x1'): breaks row-major order");
            }
        }
    } else {
        throw DataError(t.source + ": unrecognised header");
    }
    return f;
}

const char *series_colour(std::size_t i) {
    static constexpr std::array<const char *, 6> colours{"#1f77b4", "#ff7f0e", "#2ca02c",
                                                         "#d62728", "#9467bd", "#8c564b"};
    return colours[i % colours.size()];
}

// Five-stop blue-green-yellow ramp.
std::string heat_colour(double t) {
    static constexpr std::array<std::array<double, 3>, 5> stops{{{68, 1, 84},
                                                                 {59, 82, 139},
                                                                 {33, 145, 140},
                                                                 {94, 201, 98},
                                                                 {253, 231, 37}}};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double u = t - static_cast<double>(i);
    char buf[8];
    int rgb[3];
    for (int c = 0; c < 3; ++c) {
        rgb[c] = static_cast<int>(std::lround(stops[i][c] * (1 - u) + stops[i + 1][c] * u));
    }
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

std::string num(double v) { return format_double(std::round(v * 100.0) / 100.0); }

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

void svg_axes(std::ostringstream &s, const ParsedFigure &f) {
    const double x1 = kWidth - kRight;
    const double y1 = kHeight - kBottom;
    s << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(x1 - kLeft) << "\" height=\"" << num(y1 - kTop)
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
    s << "<text x=\"" << num((kLeft + x1) / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\">" << f.x_label << "</text>\n";
    s << "<text x=\"18\" y=\"" << num((kTop + y1) / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << num((kTop + y1) / 2) << ")\">" << f.y_label
      << "</text>\n";
}

std::string svg_lines(const ParsedFigure &f, bool log_y, double ylo, double yhi) {
    double xlo = INFINITY, xhi = -INFINITY;
    for (const auto &s : f.series) {
        for (double x : s.x) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
        }
    }
    if (xhi <= xlo) {
        xhi = xlo + 1.0;
    }
    const double x1 = kWidth - kRight;
    const double y1 = kHeight - kBottom;
    auto tx = [&](double x) { return kLeft + (x - xlo) / (xhi - xlo) * (x1 - kLeft); };
    auto ty = [&](double y) {
        double u;
        if (log_y) {
            u = (std::log10(std::max(y, ylo)) - std::log10(ylo)) /
                (std::log10(yhi) - std::log10(ylo));
        } else {
            u = (y - ylo) / (yhi - ylo);
        }
        return y1 - std::clamp(u, 0.0, 1.0) * (y1 - kTop);
    };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    svg_axes(s, f);
    for (int k = 0; k <= 4; ++k) {
        const double xv = xlo + (xhi - xlo) * k / 4.0;
        s << "<text x=\"" << num(tx(xv)) << "\" y=\"" << num(y1 + 16)
          << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    }
    if (log_y) {
        const int d0 = static_cast<int>(std::lround(std::log10(ylo)));
        const int d1 = static_cast<int>(std::lround(std::log10(yhi)));
        const int step = std::max(1, (d1 - d0) / 8);
        for (int d = d0; d <= d1; d += step) {
            const double yv = std::pow(10.0, d);
            s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(ty(yv) + 4)
              << "\" text-anchor=\"end\">1e" << d << "</text>\n";
        }
    } else {
        for (int k = 0; k <= 4; ++k) {
            const double yv = ylo + (yhi - ylo) * k / 4.0;
            s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(ty(yv) + 4)
              << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
        }
    }
    for (std::size_t i = 0; i < f.series.size(); ++i) {
        const auto &ser = f.series[i];
        s << "<polyline fill=\"none\" stroke=\"" << series_colour(i)
          << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t p = 0; p < ser.x.size(); ++p) {
            s << (p ? " " : "") << num(tx(ser.x[p])) << "," << num(ty(ser.y[p]));
        }
        s << "\"/>\n";
        const double ly = kTop + 16.0 * static_cast<double>(i + 1);
        s << "<line x1=\"" << num(x1 + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
          << num(x1 + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << series_colour(i)
          << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << num(x1 + 34) << "\" y=\"" << num(ly) << "\">" << ser.name
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string svg_heatmap(const ParsedFigure &f) {
    const std::size_t rows = f.axis0.size();
    const std::size_t cols = f.axis1.size();
    const auto [mn, mx] = std::minmax_element(f.grid.begin(), f.grid.end());
    const double lo = *mn;
    const double span = *mx > lo ? *mx - lo : 1.0;
    const double x1 = kWidth - kRight;
    const double y1 = kHeight - kBottom;
    const double cw = (x1 - kLeft) / static_cast<double>(cols);
    const double ch = (y1 - kTop) / static_cast<double>(rows);
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
    s << "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            // x0 grows upward
            const double y = y1 - static_cast<double>(i + 1) * ch;
            s << "<rect x=\"" << num(kLeft + static_cast<double>(j) * cw) << "\" y=\""
              << num(y) << "\" width=\"" << num(cw + 0.01) << "\" height=\"" << num(ch + 0.01)
              << "\" fill=\"" << heat_colour((f.grid[i * cols + j] - lo) / span) << "\"/>\n";
        }
    }
    s << "</g>\n";
    svg_axes(s, f);
    s << "<text x=\"" << num(kLeft) << "\" y=\"" << num(y1 + 16) << "\">"
      << tick_label(f.axis1.front()) << "</text>\n";
    s << "<text x=\"" << num(x1) << "\" y=\"" << num(y1 + 16) << "\" text-anchor=\"end\">"
      << tick_label(f.axis1.back()) << "</text>\n";
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y1) << "\" text-anchor=\"end\">"
      << tick_label(f.axis0.front()) << "</text>\n";
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(kTop + 10)
      << "\" text-anchor=\"end\">" << tick_label(f.axis0.back()) << "</text>\n";
    for (int k = 0; k <= 10; ++k) {
        const double t = k / 10.0;
        const double y = y1 - t * (y1 - kTop);
        s << "<rect x=\"" << num(x1 + 15) << "\" y=\"" << num(y - (y1 - kTop) / 11.0)
          << "\" width=\"18\" height=\"" << num((y1 - kTop) / 11.0 + 0.5) << "\" fill=\""
          << heat_colour(t) << "\"/>\n";
    }
    s << "<text x=\"" << num(x1 + 38) << "\" y=\"" << num(y1) << "\">" << tick_label(lo)
      << "</text>\n";
    s << "<text x=\"" << num(x1 + 38) << "\" y=\"" << num(kTop + 10) << "\">"
      << tick_label(*mx) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

std::string series_dat(const ParsedFigure &f, bool log_y, double floor) {
    std::ostringstream s;
    for (std::size_t i = 0; i < f.series.size(); ++i) {
        if (i > 0) {
            s << "\n\n";
        }
        s << "# " << f.series[i].name << "\n";
        for (std::size_t p = 0; p < f.series[i].x.size(); ++p) {
            const double y = log_y ? std::max(f.series[i].y[p], floor) : f.series[i].y[p];
            s << format_double(f.series[i].x[p]) << " " << format_double(y) << "\n";
        }
    }
    return s.str();
}

std::string series_gp(const ParsedFigure &f, const std::string &dat, const std::string &out,
                      bool log_y, double ylo, double yhi) {
    std::ostringstream s;
    s << "set terminal svg size 640,420\n"
      << "set output '" << out << "'\n"
      << "set xlabel '" << f.x_label << "'\n"
      << "set ylabel '" << f.y_label << "'\n"
      << "set key outside right\n";
    if (log_y) {
        s << "set logscale y\n"
          << "set format y '10^{%L}'\n";
    }
    s << "set yrange [" << format_double(ylo) << ":" << format_double(yhi) << "]\n";
    s << "plot ";
    for (std::size_t i = 0; i < f.series.size(); ++i) {
        s << (i ? ", \\\n     " : "") << "'" << dat << "' index " << i
          << " using 1:2 with lines title '" << f.series[i].name << "'";
    }
    s << "\n";
    return s.str();
}

} // namespace

LogBounds weak_log_bounds(std::span<const double> values) {
    double lo = 1e-17;
    double hi = 1e-1;
    for (double v : values) {
        if (v > 0.0 && std::isfinite(v)) {
            lo = std::min(lo, std::pow(10.0, std::floor(std::log10(v))));
            hi = std::max(hi, std::pow(10.0, std::ceil(std::log10(v))));
        }
    }
    return {lo, hi};
}

std::vector<PlotArtifact> emit_plot_data(std::span<const std::filesystem::path> csv_files,
                                         const std::filesystem::path &out_dir, bool svg) {
    if (csv_files.empty()) {
        throw DataError("no CSV files given");
    }
    std::vector<ParsedFigure> figures;
    for (const auto &p : csv_files) {
        figures.push_back(parse_figure(p));
    }
    std::filesystem::create_directories(out_dir);

    struct Pending {
        std::filesystem::path path;
        std::string bytes;
    };
    std::vector<Pending> pending;
    std::vector<PlotArtifact> artifacts;
    for (const auto &f : figures) {
        PlotArtifact a{f.kind, out_dir / (f.stem + ".dat"), out_dir / (f.stem + ".gp"),
                       svg ? out_dir / (f.stem + ".svg") : std::filesystem::path{}};
        const std::string dat = a.data_file.filename().string();
        const std::string svg_name = f.stem + ".svg";
        if (f.kind == FigureKind::Landscape) {
            a.rows = f.axis0.size();
            a.cols = f.axis1.size();
            const auto [mn, mx] = std::minmax_element(f.grid.begin(), f.grid.end());
            a.y_min = *mn;
            a.y_max = *mx;
            std::ostringstream d;
            for (std::size_t i = 0; i < a.rows; ++i) {
                for (std::size_t j = 0; j < a.cols; ++j) {
                    d << format_double(f.axis0[i]) << " " << format_double(f.axis1[j]) << " "
                      << format_double(f.grid[i * a.cols + j]) << "\n";
                }
                d << "\n";
            }
            std::ostringstream gp;
            gp << "set terminal svg size 640,420\n"
               << "set output '" << svg_name << "'\n"
               << "set xlabel 'x0'\nset ylabel 'x1'\n"
               << "set view map\nset size square\n"
               << "set xrange [" << format_double(f.axis0.front()) << ":"
               << format_double(f.axis0.back()) << "]\n"
               << "set yrange [" << format_double(f.axis1.front()) << ":"
               << format_double(f.axis1.back()) << "]\n"
               << "plot '" << dat << "' using 1:2:3 with image notitle\n";
            pending.push_back({a.data_file, d.str()});
            pending.push_back({a.script_file, gp.str()});
            if (svg) {
                pending.push_back({a.svg_file, svg_heatmap(f)});
            }
        } else {
            a.rows = f.series.size();
            for (const auto &s : f.series) {
                a.cols = std::max(a.cols, s.x.size());
            }
            std::vector<double> ys;
            for (const auto &s : f.series) {
                ys.insert(ys.end(), s.y.begin(), s.y.end());
            }
            if (f.kind == FigureKind::WeakPrivacy) {
                const auto b = weak_log_bounds(ys);
                a.log_y = true;
                a.y_min = b.lo;
                a.y_max = b.hi;
            } else {
                const auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
                a.y_min = std::min(0.0, *mn);
                a.y_max = *mx > a.y_min ? *mx * 1.05 : a.y_min + 1.0;
            }
            pending.push_back({a.data_file, series_dat(f, a.log_y, a.y_min)});
            pending.push_back(
                {a.script_file, series_gp(f, dat, svg_name, a.log_y, a.y_min, a.y_max)});
            if (svg) {
                pending.push_back({a.svg_file, svg_lines(f, a.log_y, a.y_min, a.y_max)});
            }
        }
        artifacts.push_back(std::move(a));
    }
    for (const auto &p : pending) {
        write_file(p.path, p.bytes);
    }
    return artifacts;
}

} // namespace vqcshield
