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
// Command-line driver: one subcommand per experiment, plus plot-data
// emission from existing CSVs.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vqcshield/error.hpp"
#include "vqcshield/harness.hpp"
#include "vqcshield/plot.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> variants;
    std::string preset;
};

void add_common(CLI::App *sub, CommonArgs &a) {
    sub->add_option("--config", a.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--out", a.out, "Output directory");
    sub->add_option("--seed", a.seed, "Master seed; re-derives every purpose seed");
    sub->add_option("--variant", a.variants, "standard | qdp | dyloc (repeatable)");
    sub->add_option("--preset", a.preset, "Named preset")->check(CLI::IsMember({"paper-repro"}));
}

vqcshield::ExperimentConfig resolve(const CommonArgs &a, vqcshield::Experiment e) {
    using vqcshield::ExperimentConfig;
    if (!a.preset.empty() && !a.config.empty()) {
        throw vqcshield::Error("--preset and --config are mutually exclusive");
    }
    ExperimentConfig c = a.config.empty()
                             ? ExperimentConfig::preset(a.preset.empty() ? "paper-repro" : a.preset)
                             : ExperimentConfig::load(a.config);
    c.experiment = e;
    if (!a.out.empty()) {
        c.out_dir = a.out;
    }
    if (a.seed) {
        c.seeds = vqcshield::SeedSet::from_master(*a.seed);
    }
    if (!a.variants.empty()) {
        c.variants.clear();
        for (const auto &v : a.variants) {
            c.variants.push_back(vqcshield::variant_from_string(v));
        }
    }
    c.validate();
    return c;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Privacy attacks and defenses for variational quantum classifiers"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, vqcshield::Experiment>> experiments{
        {"train", vqcshield::Experiment::Train},
        {"attack-weak", vqcshield::Experiment::AttackWeak},
        {"attack-strong", vqcshield::Experiment::AttackStrong},
        {"landscape", vqcshield::Experiment::Landscape},
        {"dla-info", vqcshield::Experiment::DlaInfo}};
    std::vector<CommonArgs> args(experiments.size());
    std::vector<CLI::App *> subs;
    const std::vector<std::string> help{
        "Train the selected variants and write loss.csv",
        "Recover snapshots from shared gradients and write weak.csv",
        "Invert leaked snapshots back to inputs and write strong.csv",
        "Scan the inversion loss over the input square",
        "Report the ansatz algebra, snapshot basis and purity"};
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        subs.push_back(app.add_subcommand(experiments[i].first, help[i]));
        add_common(subs.back(), args[i]);
    }

    std::vector<std::string> plot_inputs;
    std::string plot_out = "plots";
    bool no_svg = false;
    auto *plot = app.add_subcommand("plot", "Write gnuplot data, scripts and SVG figures");
    plot->add_option("csv", plot_inputs, "Experiment CSV files")->required();
    plot->add_option("--out", plot_out, "Output directory");
    plot->add_flag("--no-svg", no_svg, "Skip SVG output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (plot->parsed()) {
            std::vector<std::filesystem::path> paths(plot_inputs.begin(), plot_inputs.end());
            for (const auto &a : vqcshield::emit_plot_data(paths, plot_out, !no_svg)) {
                std::cout << a.data_file.string() << "\n";
            }
            return 0;
        }
        for (std::size_t i = 0; i < experiments.size(); ++i) {
            if (!subs[i]->parsed()) {
                continue;
            }
            const auto cfg = resolve(args[i], experiments[i].second);
            const auto result = vqcshield::run_experiment(cfg);
            for (const auto &f : result.files) {
                std::cout << f.string() << "\n";
            }
        }
    } catch (const std::exception &e) {
        std::cerr << "vqcshield: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
