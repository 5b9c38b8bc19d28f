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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>
#include <string>
#include <vector>

#include "vqcshield/attacks.hpp"
#include "vqcshield/dla.hpp"
#include "vqcshield/error.hpp"
#include "vqcshield/harness.hpp"
#include "vqcshield/learn.hpp"
#include "vqcshield/models.hpp"
#include "vqcshield/plot.hpp"

namespace py = pybind11;
using namespace vqcshield;

namespace {

ModelConfig parse_model(std::size_t n_qubits, const std::string &encoder, int max_order,
                        std::size_t layers, const std::string &dls, double delta,
                        std::size_t feature_dim, std::uint64_t seed) {
    DlsMode mode;
    mode.kind = dls_kind_from_string(dls);
    if (mode.kind == DlsMode::Kind::Perturbative) mode.delta = delta;
    return make_model_config(n_qubits, encoder_from_string(encoder), max_order, layers, mode,
                             feature_dim, seed);
}

std::vector<std::string> labels(const std::vector<PauliString> &words) {
    std::vector<std::string> out;
    out.reserve(words.size());
    for (const auto &w : words) out.push_back(w.label());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dual-layer input protection for variational quantum classifiers";
    m.attr("__version__") = std::string(artifact_version);

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<DimensionCapExceeded>(m, "DimensionCapExceeded", base.ptr());
    py::register_exception<ClosureError>(m, "ClosureError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());

    m.def(
        "make_moons",
        [](std::size_t n, double sigma, std::uint64_t seed) {
            const auto data = make_moons(n, sigma, seed);
            std::vector<std::vector<double>> raw;
            std::vector<std::vector<double>> scaled;
            std::vector<int> y;
            for (std::size_t i = 0; i < data.size(); ++i) {
                raw.push_back(data.samples()[i].features);
                scaled.push_back(data.scaled(i));
                y.push_back(data.samples()[i].label);
            }
            return py::make_tuple(raw, scaled, y);
        },
        py::arg("n_samples") = 150, py::arg("noise_sigma") = 0.05, py::arg("seed") = 0,
        "Returns (raw, scaled, labels); scaled features lie in [0, pi].");

    m.def(
        "lie_closure_dim",
        [](const std::vector<std::string> &generators, std::size_t dim_cap) {
            std::vector<PauliString> gens;
            for (const auto &g : generators) gens.push_back(PauliString::parse(g));
            return lie_closure(gens, dim_cap).dim();
        },
        py::arg("generators"), py::arg("dim_cap") = default_dim_cap);

    m.def(
        "model_output",
        [](const std::vector<double> &x, const std::vector<double> &theta, std::size_t n_qubits,
           const std::string &encoder, int max_order, std::size_t layers) {
            const auto cfg = parse_model(n_qubits, encoder, max_order, layers, "off", 0.0,
                                         x.size(), 0);
            return model_output(cfg, x, theta);
        },
        py::arg("x"), py::arg("theta"), py::arg("n_qubits") = 3,
        py::arg("encoder") = "product_rx", py::arg("max_order") = 2, py::arg("layers") = 2);

    m.def(
        "model_algebra",
        [](std::size_t n_qubits, const std::string &encoder, int max_order, std::size_t layers) {
            const Model model(parse_model(n_qubits, encoder, max_order, layers, "off", 0.0, 2, 0));
            const auto alg = model.algebra();
            py::dict out;
            out["num_params"] = model.num_params();
            out["generators"] = labels(alg.absorbed.generators);
            out["dla"] = labels(alg.dla.words());
            out["module"] = labels(alg.basis.words());
            return out;
        },
        py::arg("n_qubits") = 3, py::arg("encoder") = "product_rx", py::arg("max_order") = 2,
        py::arg("layers") = 2);

    m.def(
        "snapshot",
        [](const std::vector<double> &x, std::size_t n_qubits, const std::string &encoder,
           int max_order, std::size_t layers) {
            const Model model(
                parse_model(n_qubits, encoder, max_order, layers, "off", 0.0, x.size(), 0));
            const auto e = snapshot(model.encode(x), model.algebra().basis).values;
            return std::vector<double>(e.data(), e.data() + e.size());
        },
        py::arg("x"), py::arg("n_qubits") = 3, py::arg("encoder") = "product_rx",
        py::arg("max_order") = 2, py::arg("layers") = 2);

    m.def(
        "preset_config", [](const std::string &name) { return ExperimentConfig::preset(name).to_json(); },
        py::arg("name") = "paper-repro", "Canonical JSON text of a named preset.");

    m.def(
        "run_experiment",
        [](const std::string &config_json) {
            const auto cfg = ExperimentConfig::from_json(config_json);
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(cfg);
            }
            return py::make_tuple(r.files, r.metrics);
        },
        py::arg("config_json"), "Runs an experiment; returns (files, metrics).");

    m.def(
        "emit_plot_data",
        [](const std::vector<std::filesystem::path> &csv_files, const std::filesystem::path &out,
           bool svg) {
            std::vector<std::filesystem::path> written;
            for (const auto &a : emit_plot_data(csv_files, out, svg)) {
                written.push_back(a.data_file);
                written.push_back(a.script_file);
                if (!a.svg_file.empty()) written.push_back(a.svg_file);
            }
            return written;
        },
        py::arg("csv_files"), py::arg("out_dir"), py::arg("svg") = true);

    m.def("sha256_file", &sha256_file, py::arg("path"));
}
