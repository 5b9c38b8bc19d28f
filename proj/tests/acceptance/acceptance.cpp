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
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any selected criterion fails.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "vqcshield/attacks.hpp"
#include "vqcshield/csv.hpp"
#include "vqcshield/harness.hpp"
#include "vqcshield/rng.hpp"

using namespace vqcshield;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

const ExperimentConfig &preset() {
    static const ExperimentConfig c = ExperimentConfig::preset("paper-repro");
    return c;
}

fs::path run_root() {
    static const fs::path root = [] {
        auto p = fs::temp_directory_path() /
                 ("vqcshield_acceptance_" + std::to_string(std::random_device{}()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

// Preset run of one experiment, cached per process.
const RunResult &preset_run(Experiment e) {
    static std::map<Experiment, RunResult> cache;
    auto it = cache.find(e);
    if (it == cache.end()) {
        auto c = preset();
        c.experiment = e;
        c.out_dir = run_root() / to_string(e);
        it = cache.emplace(e, run_experiment(c)).first;
    }
    return it->second;
}

CsvTable preset_csv(Experiment e, const std::string &name) {
    preset_run(e);
    return read_csv(run_root() / to_string(e) / name);
}

std::vector<double> column_for(const CsvTable &t, const std::string &variant,
                               const std::string &col) {
    const auto vcol = t.column("variant");
    const auto c = t.column(col);
    std::vector<double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.rows[r][vcol] == variant) {
            out.push_back(t.number(r, c));
        }
    }
    return out;
}

std::vector<double> uniform(std::mt19937_64 &rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

Outcome linear_contraction() {
    const auto cfg = variant_model_config(preset(), Variant::Standard);
    const Model model(cfg);
    const auto alg = model.algebra();
    const auto data = make_moons(preset().n_samples, preset().noise_sigma, preset().seeds.data);
    std::mt19937_64 rng(derive_seed(preset().seeds.master, 101));
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
        const auto theta = uniform(rng, model.num_params(), -pi, pi);
        const auto state = model.encode(data.scaled(rng() % data.size()));
        const auto m = adjoint_rep(alg.absorbed.rotations, theta, alg.basis);
        const double linear = alg.basis.mu().dot(m * snapshot(state, alg.basis).values);
        const double direct = model.output(state, theta, model.observable());
        worst = std::max(worst, std::abs(linear - direct));
    }
    return {worst <= 1e-8, "max |mu^T Ad e - <O>| = " + fmt(worst)};
}

Outcome gradient_oracle() {
    std::mt19937_64 rng(derive_seed(preset().seeds.master, 102));
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 2 + rng() % 3;
        const std::size_t layers = 1 + rng() % 2;
        const auto enc = rng() % 2 ? EncoderKind::TCGE : EncoderKind::ProductRX;
        const Model model(make_model_config(n, enc, 2, layers, DlsMode::off(), 2));
        auto theta = uniform(rng, model.num_params(), -pi, pi);
        const auto state = model.encode(uniform(rng, 2, 0.0, pi));
        const auto ps = model.output_gradient(state, theta, model.observable());
        const double h = 1e-5;
        for (std::size_t k = 0; k < theta.size(); ++k) {
            const double t0 = theta[k];
            theta[k] = t0 + h;
            const double up = model.output(state, theta, model.observable());
            theta[k] = t0 - h;
            const double down = model.output(state, theta, model.observable());
            theta[k] = t0;
            worst = std::max(worst, std::abs(ps[k] - (up - down) / (2 * h)));
        }
    }
    return {worst <= 1e-6, "max |shift - finite difference| = " + fmt(worst)};
}

Outcome weak_breach() {
    const auto &m = preset_run(Experiment::AttackWeak).metrics;
    const double entry = m.at("max_snapshot_entry_error.standard");
    const auto weak = column_for(preset_csv(Experiment::AttackWeak, "weak.csv"), "standard",
                                 "mse_weak");
    const double worst = *std::max_element(weak.begin(), weak.end());
    return {entry < 1e-8 && worst <= 1e-12 && weak.size() == preset().steps,
            "max snapshot entry error " + fmt(entry) + ", max mse_weak " + fmt(worst)};
}

Outcome weak_defense() {
    const auto t = preset_csv(Experiment::AttackWeak, "weak.csv");
    const auto weak = column_for(t, "dyloc", "mse_weak");
    const auto res = column_for(t, "dyloc", "recovery_residual");
    double mean = 0.0;
    for (double v : weak) {
        mean += v;
    }
    mean /= static_cast<double>(weak.size());
    const double min_res = *std::min_element(res.begin(), res.end());
    const double std_entry =
        preset_run(Experiment::AttackWeak).metrics.at("max_snapshot_entry_error.standard");
    const auto base = column_for(t, "standard", "mse_weak");
    const double base_max = *std::max_element(base.begin(), base.end());
    return {mean >= 1e-4 && min_res > 1e-3,
            "mean mse_weak " + fmt(mean) + ", min recovery residual " + fmt(min_res) +
                " (baseline max mse_weak " + fmt(base_max) + ", entry error " + fmt(std_entry) +
                ")"};
}

Outcome strong_breach() {
    const auto t = preset_csv(Experiment::AttackStrong, "strong.csv");
    bool ok = true;
    std::string detail;
    for (const char *v : {"standard", "qdp"}) {
        const auto mse = column_for(t, v, "mse_strong");
        const double init = mse.front();
        const double best = *std::min_element(mse.begin(), mse.begin() + 51);
        ok = ok && init >= 2.0 && init <= 3.0 && best < 0.2;
        detail += std::string(v) + ": initial " + fmt(init) + ", best within 50 " + fmt(best) +
                  ", final " + fmt(mse.back()) + "; ";
    }
    return {ok, detail};
}

Outcome strong_defense() {
    const auto t = preset_csv(Experiment::AttackStrong, "strong.csv");
    const auto mse = column_for(t, "dyloc", "mse_strong");
    const double final_mse = mse.back();
    return {mse.size() == preset().attack_iters + 1 && final_mse > 1.0,
            "dyloc initial " + fmt(mse.front()) + ", after " +
                std::to_string(mse.size() - 1) + " iterations " + fmt(final_mse) +
                " (reference stagnation level 2.0: " + (final_mse > 2.0 ? "above" : "below") +
                ")"};
}

double tail_std(const std::vector<double> &v, std::size_t n) {
    const std::size_t k = std::min(n, v.size());
    double mean = 0.0;
    for (std::size_t i = v.size() - k; i < v.size(); ++i) {
        mean += v[i];
    }
    mean /= static_cast<double>(k);
    double s = 0.0;
    for (std::size_t i = v.size() - k; i < v.size(); ++i) {
        s += (v[i] - mean) * (v[i] - mean);
    }
    return std::sqrt(s / static_cast<double>(k));
}

Outcome utility() {
    const auto t = preset_csv(Experiment::Train, "loss.csv");
    const auto std_loss = column_for(t, "standard", "loss");
    const auto dy_loss = column_for(t, "dyloc", "loss");
    const auto qdp_loss = column_for(t, "qdp", "loss");
    const double s_final = std_loss.back();
    const double d_final = dy_loss.back();
    const double q_sd = tail_std(qdp_loss, 30);
    const double d_sd = tail_std(dy_loss, 30);
    const bool ok = s_final <= 0.3 && std::abs(d_final - s_final) <= 0.15 && q_sd > d_sd;
    return {ok, "standard final " + fmt(s_final) + ", dyloc final " + fmt(d_final) +
                    ", qdp final " + fmt(qdp_loss.back()) + ", last-30 std qdp " + fmt(q_sd) +
                    " vs dyloc " + fmt(d_sd)};
}

Outcome landscape() {
    const auto &m = preset_run(Experiment::Landscape).metrics;
    const double base = m.at("local_minima.standard");
    const double dy = m.at("local_minima.dyloc");
    const double qdp = m.at("local_minima.qdp");
    return {dy > base && base <= 2.0,
            "strict local minima: standard " + fmt(base) + ", qdp " + fmt(qdp) + ", dyloc " +
                fmt(dy)};
}

Outcome dla_sanity() {
    const std::vector<PauliString> su2{PauliString::parse("X"), PauliString::parse("Z")};
    const std::size_t small = lie_closure(su2).dim();

    const oracle::Mat c = oracle::ladder(3);
    std::vector<oracle::Mat> gens;
    for (const char *l : {"YII", "IYI", "IIY"}) {
        gens.push_back(oracle::C(0, 1) * oracle::pauli(l));
    }
    for (const char *l : {"YII", "IYI", "IIY"}) {
        gens.push_back(oracle::C(0, 1) * c * oracle::pauli(l) * c);
    }
    const std::size_t oracle_dim = oracle::lie_dimension(gens);
    const Model model(variant_model_config(preset(), Variant::DyLoC));
    const std::size_t dim = model.algebra().dla.dim();
    return {small == 3 && dim == oracle_dim && dim < 63,
            "su(2) closure " + std::to_string(small) + ", ansatz closure " +
                std::to_string(dim) + ", dense oracle " + std::to_string(oracle_dim)};
}

Outcome purity() {
    const Model model(variant_model_config(preset(), Variant::DyLoC));
    const auto basis = model.algebra().basis;
    const auto data = make_moons(preset().n_samples, preset().noise_sigma, preset().seeds.data);
    std::mt19937_64 rng(derive_seed(preset().seeds.master, 110));
    double lo = INFINITY;
    for (int k = 0; k < 20; ++k) {
        lo = std::min(lo, generalized_purity(model.encode(data.scaled(rng() % data.size())),
                                             basis));
    }
    return {lo >= 0.1, "min generalized purity over 20 inputs " + fmt(lo)};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    std::size_t compared = 0;
    std::string mismatch;
    for (auto e : {Experiment::Train, Experiment::AttackWeak, Experiment::AttackStrong,
                   Experiment::Landscape}) {
        std::map<std::string, std::string> first;
        for (const char *threads : {"1", "4"}) {
            ::setenv("VQCSHIELD_THREADS", threads, 1);
            auto c = preset();
            c.experiment = e;
            c.out_dir = run_root() / ("det_" + to_string(e) + "_" + threads);
            for (const auto &f : run_experiment(c).files) {
                if (f.extension() != ".csv") {
                    continue;
                }
                const auto bytes = slurp(f);
                const auto name = f.filename().string();
                if (first.count(name) == 0) {
                    first[name] = bytes;
                } else {
                    ++compared;
                    if (first[name] != bytes) {
                        mismatch += " " + name;
                    }
                }
            }
        }
    }
    ::unsetenv("VQCSHIELD_THREADS");
    return {mismatch.empty() && compared > 0,
            std::to_string(compared) + " CSV files compared across 1 and 4 worker threads" +
                (mismatch.empty() ? "" : "; differing:" + mismatch)};
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"linear snapshot contraction matches simulation", linear_contraction},
        {"parameter-shift gradients match finite differences", gradient_oracle},
        {"static model leaks its snapshot exactly", weak_breach},
        {"scrambled gradients defeat snapshot recovery", weak_defense},
        {"baseline inputs are reconstructed", strong_breach},
        {"graph-encoded inputs resist reconstruction", strong_defense},
        {"defended model keeps its utility", utility},
        {"defended inversion landscape is rugged", landscape},
        {"algebra dimensions match the dense oracle", dla_sanity},
        {"encoded states keep gradient signal", purity},
        {"repeat runs are byte-identical", determinism}};

    std::size_t only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            only = static_cast<std::size_t>(std::stoul(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }
    if (only > criteria.size()) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }

    int failures = 0;
    for (std::size_t k = 1; k <= criteria.size(); ++k) {
        if (only != 0 && k != only) {
            continue;
        }
        Outcome o;
        try {
            o = criteria[k - 1].second();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        std::cout << "criterion " << k << " " << (o.pass ? "PASS" : "FAIL") << ": "
                  << criteria[k - 1].first << " -- " << o.detail << std::endl;
        failures += o.pass ? 0 : 1;
    }
    std::error_code ec;
    fs::remove_all(run_root(), ec);
    return failures == 0 ? 0 : 1;
}
