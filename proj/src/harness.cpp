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
#include "vqcshield/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "vqcshield/attacks.hpp"
#include "vqcshield/csv.hpp"
#include "vqcshield/dla.hpp"
#include "vqcshield/error.hpp"
#include "vqcshield/metrics.hpp"
#include "vqcshield/parallel.hpp"
#include "vqcshield/rng.hpp"

namespace vqcshield {

using json = nlohmann::json;

namespace {

enum SeedStream : std::uint64_t { kData = 1, kInit, kScrambler, kNoise, kAttack };

std::vector<Variant> canonical_variants(std::vector<Variant> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

template <class T>
void take(const json &obj, const char *key, T &dst) {
    if (obj.contains(key)) {
        dst = obj.at(key).get<T>();
    }
}

void reject_unknown(const json &obj, std::initializer_list<std::string_view> known,
                    const std::string &where) {
    if (!obj.is_object()) {
        throw Error("config: '" + where + "' must be an object");
    }
    for (const auto &[key, _] : obj.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error("config: unknown key '" + where + key + "'");
        }
    }
}

} // namespace

std::string to_string(Experiment e) {
    switch (e) {
    case Experiment::Train:
        return "train";
    case Experiment::AttackWeak:
        return "attack-weak";
    case Experiment::AttackStrong:
        return "attack-strong";
    case Experiment::Landscape:
        return "landscape";
    case Experiment::DlaInfo:
        return "dla-info";
    }
    return "unknown";
}

Experiment experiment_from_string(const std::string &name) {
    for (auto e : {Experiment::Train, Experiment::AttackWeak, Experiment::AttackStrong,
                   Experiment::Landscape, Experiment::DlaInfo}) {
        if (to_string(e) == name) {
            return e;
        }
    }
    throw Error("unknown experiment '" + name + "'");
}

SeedSet SeedSet::from_master(std::uint64_t master) {
    return {master,
            derive_seed(master, kData),
            derive_seed(master, kInit),
            derive_seed(master, kScrambler),
            derive_seed(master, kNoise),
            derive_seed(master, kAttack)};
}

void ExperimentConfig::validate() const {
    auto require = [](bool ok, const char *msg) {
        if (!ok) {
            throw Error(std::string("config: ") + msg);
        }
    };
    require(n_qubits >= 2 && n_qubits <= 10, "n_qubits must lie in [2, 10]");
    require(max_order >= 1, "max_order must be >= 1");
    require(ansatz_layers >= 1, "ansatz_layers must be >= 1");
    require(std::isfinite(dls.delta) && dls.delta >= 0.0, "dls delta must be >= 0");
    require(dls.kind != DlsMode::Kind::Off || dls.delta == 0.0, "dls delta set with mode off");
    require(n_samples >= 2, "n_samples must be >= 2");
    require(std::isfinite(noise_sigma) && noise_sigma >= 0.0, "noise_sigma must be >= 0");
    require(steps >= 1, "steps must be >= 1");
    require(lr > 0.0 && std::isfinite(lr), "lr must be positive");
    require(init_range >= 0.0 && std::isfinite(init_range), "init_range must be >= 0");
    require(qdp_lambda >= 0.0 && std::isfinite(qdp_lambda), "qdp_lambda must be >= 0");
    require(attack_iters >= 1, "attack iters must be >= 1");
    require(attack_lr > 0.0 && std::isfinite(attack_lr), "attack lr must be positive");
    require(fd_step > 0.0 && fd_step < 0.1, "fd_step must lie in (0, 0.1)");
    require(probes >= 1 && probe_stride >= 1, "probes and probe_stride must be >= 1");
    require((probes - 1) * probe_stride < steps, "probe steps must be distinct");
    require(init_mse_min >= 0.0 && init_mse_min < init_mse_max, "bad init mse window");
    require(grid >= 8, "grid must be >= 8");
    require(purity_inputs >= 1 && purity_inputs <= n_samples,
            "purity_inputs must lie in [1, n_samples]");
    require(!variants.empty(), "at least one variant is required");
    require(!out_dir.empty(), "out_dir must be set");
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = to_string(experiment);
    j["model"] = {{"n_qubits", n_qubits},
                  {"max_order", max_order},
                  {"ansatz_layers", ansatz_layers},
                  {"dls", {{"mode", to_string(dls.kind)}, {"delta", dls.delta}}}};
    j["data"] = {{"n_samples", n_samples}, {"noise_sigma", noise_sigma}};
    j["train"] = {{"steps", steps},
                  {"lr", lr},
                  {"init_range", init_range},
                  {"qdp_lambda", qdp_lambda}};
    j["attack"] = {{"iters", attack_iters},         {"lr", attack_lr},
                   {"fd_step", fd_step},            {"probes", probes},
                   {"probe_stride", probe_stride},  {"init_mse_min", init_mse_min},
                   {"init_mse_max", init_mse_max}};
    j["landscape"] = {{"grid", grid}};
    j["dla_info"] = {{"purity_inputs", purity_inputs}};
    json vs = json::array();
    for (auto v : variants) {
        vs.push_back(to_string(v));
    }
    j["variants"] = vs;
    j["seeds"] = {{"master", seeds.master}, {"data", seeds.data},
                  {"init", seeds.init},     {"scrambler", seeds.scrambler},
                  {"noise", seeds.noise},   {"attack", seeds.attack}};
    j["out_dir"] = out_dir.generic_string();
    return j.dump(2) + "\n";
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw Error(std::string("config: ") + e.what());
    }
    ExperimentConfig c;
    try {
        reject_unknown(j,
                       {"experiment", "model", "data", "train", "attack", "landscape",
                        "dla_info", "variants", "seeds", "out_dir"},
                       "");
        if (j.contains("experiment")) {
            c.experiment = experiment_from_string(j.at("experiment").get<std::string>());
        }
        if (j.contains("model")) {
            const auto &m = j.at("model");
            reject_unknown(m, {"n_qubits", "max_order", "ansatz_layers", "dls"}, "model.");
            take(m, "n_qubits", c.n_qubits);
            take(m, "max_order", c.max_order);
            take(m, "ansatz_layers", c.ansatz_layers);
            if (m.contains("dls")) {
                const auto &d = m.at("dls");
                reject_unknown(d, {"mode", "delta"}, "model.dls.");
                if (d.contains("mode")) {
                    c.dls.kind = dls_kind_from_string(d.at("mode").get<std::string>());
                }
                if (c.dls.kind != DlsMode::Kind::Perturbative) {
                    c.dls.delta = 0.0;
                }
                take(d, "delta", c.dls.delta);
            }
        }
        if (j.contains("data")) {
            const auto &d = j.at("data");
            reject_unknown(d, {"n_samples", "noise_sigma"}, "data.");
            take(d, "n_samples", c.n_samples);
            take(d, "noise_sigma", c.noise_sigma);
        }
        if (j.contains("train")) {
            const auto &t = j.at("train");
            reject_unknown(t, {"steps", "lr", "init_range", "qdp_lambda"}, "train.");
            take(t, "steps", c.steps);
            take(t, "lr", c.lr);
            take(t, "init_range", c.init_range);
            take(t, "qdp_lambda", c.qdp_lambda);
        }
        if (j.contains("attack")) {
            const auto &a = j.at("attack");
            reject_unknown(a,
                           {"iters", "lr", "fd_step", "probes", "probe_stride",
                            "init_mse_min", "init_mse_max"},
                           "attack.");
            take(a, "iters", c.attack_iters);
            take(a, "lr", c.attack_lr);
            take(a, "fd_step", c.fd_step);
            take(a, "probes", c.probes);
            take(a, "probe_stride", c.probe_stride);
            take(a, "init_mse_min", c.init_mse_min);
            take(a, "init_mse_max", c.init_mse_max);
        }
        if (j.contains("landscape")) {
            reject_unknown(j.at("landscape"), {"grid"}, "landscape.");
            take(j.at("landscape"), "grid", c.grid);
        }
        if (j.contains("dla_info")) {
            reject_unknown(j.at("dla_info"), {"purity_inputs"}, "dla_info.");
            take(j.at("dla_info"), "purity_inputs", c.purity_inputs);
        }
        if (j.contains("variants")) {
            c.variants.clear();
            for (const auto &v : j.at("variants")) {
                c.variants.push_back(variant_from_string(v.get<std::string>()));
            }
        }
        if (j.contains("seeds")) {
            const auto &s = j.at("seeds");
            reject_unknown(s, {"master", "data", "init", "scrambler", "noise", "attack"},
                           "seeds.");
            std::uint64_t master = c.seeds.master;
            take(s, "master", master);
            c.seeds = SeedSet::from_master(master);
            take(s, "data", c.seeds.data);
            take(s, "init", c.seeds.init);
            take(s, "scrambler", c.seeds.scrambler);
            take(s, "noise", c.seeds.noise);
            take(s, "attack", c.seeds.attack);
        }
        if (j.contains("out_dir")) {
            c.out_dir = j.at("out_dir").get<std::string>();
        }
    } catch (const json::exception &e) {
        throw Error(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("config: cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

ExperimentConfig ExperimentConfig::preset(std::string_view name) {
    if (name != "paper-repro") {
        throw Error("unknown preset '" + std::string(name) + "'");
    }
    ExperimentConfig c;
    c.n_qubits = 3;
    c.max_order = 2;
    c.ansatz_layers = 2;
    c.dls = DlsMode::perturbative(0.3);
    c.qdp_lambda = 0.15;
    c.n_samples = 150;
    c.noise_sigma = 0.05;
    c.steps = 100;
    c.attack_iters = 300;
    c.grid = 41;
    c.seeds = SeedSet::from_master(2024);
    return c;
}

ModelConfig variant_model_config(const ExperimentConfig &config, Variant variant) {
    const bool defended = variant == Variant::DyLoC;
    return make_model_config(config.n_qubits,
                             defended ? EncoderKind::TCGE : EncoderKind::ProductRX,
                             config.max_order, config.ansatz_layers,
                             defended ? config.dls : DlsMode::off(), 2, config.seeds.scrambler);
}

TrainSettings train_settings(const ExperimentConfig &config) {
    TrainSettings s;
    s.steps = config.steps;
    s.adam.lr = config.lr;
    s.init_range = config.init_range;
    s.qdp_lambda = config.qdp_lambda;
    s.init_seed = config.seeds.init;
    s.scrambler_seed = config.seeds.scrambler;
    s.noise_seed = config.seeds.noise;
    return s;
}

AttackTarget pick_attack_target(const ExperimentConfig &config, const Dataset &data) {
    std::mt19937_64 rng(config.seeds.attack);
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    AttackTarget t;
    t.index = pick(rng);
    t.x_true = data.scaled(t.index);
    auto init = draw_far_init(t.x_true, rng, config.init_mse_min, config.init_mse_max);
    if (!init) {
        throw Error("no initial guess within the requested mse window for sample " +
                    std::to_string(t.index));
    }
    t.x_init = std::move(*init);
    return t;
}

std::string sha256_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(path.string() + ": cannot open for hashing");
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                 &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 init failed");
    }
    char buf[1 << 14];
    while (in) {
        in.read(buf, sizeof(buf));
        if (in.gcount() > 0 &&
            EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount())) != 1) {
            throw Error("sha256 update failed");
        }
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
        throw Error("sha256 final failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

namespace {

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return v.size() < 2 ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

class Outputs {
  public:
    explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void write(const std::string &name, std::string_view bytes) {
        const auto path = dir_ / name;
        files_.push_back(path);
        write_file(path, bytes);
    }
    void discard() noexcept {
        for (const auto &f : files_) {
            std::error_code ec;
            std::filesystem::remove(f, ec);
        }
        files_.clear();
    }
    [[nodiscard]] const std::vector<std::filesystem::path> &files() const { return files_; }
    [[nodiscard]] const std::filesystem::path &dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> files_;
};

using Metrics = std::map<std::string, double>;

void run_train(const ExperimentConfig &cfg, Outputs &out, Metrics &metrics) {
    const auto data = make_moons(cfg.n_samples, cfg.noise_sigma, cfg.seeds.data);
    CsvWriter csv({"step", "variant", "loss", "mse_weak"});
    for (auto v : canonical_variants(cfg.variants)) {
        const Model model(variant_model_config(cfg, v));
        const auto records = train(model, data, v, train_settings(cfg));
        std::vector<double> losses;
        std::vector<double> weak;
        for (const auto &r : records) {
            csv.cell(r.step).cell(to_string(v)).cell(r.loss).cell(r.mse_weak).end_row();
            losses.push_back(r.loss);
            weak.push_back(r.mse_weak);
        }
        const std::size_t tail = std::min<std::size_t>(30, losses.size());
        const std::span<const double> last(losses.data() + losses.size() - tail, tail);
        const std::string name = to_string(v);
        metrics["final_loss." + name] = losses.back();
        metrics["loss_std_last30." + name] = stddev(last);
        metrics["mean_mse_weak." + name] = mean(weak);
        metrics["max_mse_weak." + name] = *std::max_element(weak.begin(), weak.end());
    }
    out.write("loss.csv", csv.text());
}

void run_attack_weak(const ExperimentConfig &cfg, Outputs &out, Metrics &metrics) {
    const auto data = make_moons(cfg.n_samples, cfg.noise_sigma, cfg.seeds.data);
    const auto target = pick_attack_target(cfg, data);
    metrics["target_index"] = static_cast<double>(target.index);
    CsvWriter csv({"step", "variant", "mse_weak", "recovery_residual", "recovered_snapshot_mse"});
    for (auto v : canonical_variants(cfg.variants)) {
        const Model model(variant_model_config(cfg, v));
        const auto algebra = model.algebra();
        const auto records = train(model, data, v, train_settings(cfg));
        const auto state = model.encode(target.x_true);
        const auto e_true = snapshot(state, algebra.basis);

        // Per step: the adversary's static Omega and the gradient it observes.
        std::vector<OmegaMatrix> omegas(records.size());
        std::vector<std::vector<double>> grads(records.size());
        parallel_for(records.size(), [&](std::size_t t) {
            const auto &r = records[t];
            omegas[t] = build_omega(model, algebra, r.theta, nullptr);
            const auto obs = model.measured_observable(r.scrambler ? &*r.scrambler : nullptr);
            grads[t] = model.output_gradient(state, r.theta, obs);
            if (v == Variant::QDP) {
                std::mt19937_64 rng(derive_seed(cfg.seeds.noise, r.step));
                grads[t] = qdp_perturb(grads[t], cfg.qdp_lambda, rng);
            }
        });

        const std::string name = to_string(v);
        std::vector<double> weak;
        std::vector<double> residuals;
        double max_entry_error = 0.0;
        double max_snapshot_mse = 0.0;
        const std::size_t steps = records.size();
        for (std::size_t t = 0; t < steps; ++t) {
            RecoverySystem system(algebra.basis.dim());
            for (std::size_t k = 0; k < cfg.probes; ++k) {
                const std::size_t s = (t + k * cfg.probe_stride) % steps;
                system.add_observation(omegas[s], grads[s], records[s].theta);
            }
            const auto rec = snapshot_recovery(system);
            const Eigen::VectorXd diff = rec.e_hat.values - e_true.values;
            const double snap_mse = diff.squaredNorm() / static_cast<double>(diff.size());
            max_entry_error = std::max(max_entry_error, diff.cwiseAbs().maxCoeff());
            max_snapshot_mse = std::max(max_snapshot_mse, snap_mse);
            weak.push_back(records[t].mse_weak);
            residuals.push_back(rec.residual_norm);
            csv.cell(records[t].step)
                .cell(name)
                .cell(records[t].mse_weak)
                .cell(rec.residual_norm)
                .cell(snap_mse)
                .end_row();
        }
        metrics["mean_mse_weak." + name] = mean(weak);
        metrics["max_mse_weak." + name] = *std::max_element(weak.begin(), weak.end());
        metrics["min_recovery_residual." + name] =
            *std::min_element(residuals.begin(), residuals.end());
        metrics["max_recovery_residual." + name] =
            *std::max_element(residuals.begin(), residuals.end());
        metrics["max_snapshot_entry_error." + name] = max_entry_error;
        metrics["max_recovered_snapshot_mse." + name] = max_snapshot_mse;
    }
    out.write("weak.csv", csv.text());
}

void run_attack_strong(const ExperimentConfig &cfg, Outputs &out, Metrics &metrics) {
    const auto data = make_moons(cfg.n_samples, cfg.noise_sigma, cfg.seeds.data);
    const auto target = pick_attack_target(cfg, data);
    metrics["target_index"] = static_cast<double>(target.index);
    metrics["initial_mse_strong"] = strong_privacy_mse(target.x_true, target.x_init);
    metrics["reference_stagnation_mse"] = 2.0;
    CsvWriter csv({"iter", "variant", "inversion_loss", "mse_strong"});
    const InversionSettings settings{cfg.attack_iters, cfg.attack_lr, cfg.fd_step};
    for (auto v : canonical_variants(cfg.variants)) {
        const Model model(variant_model_config(cfg, v));
        const auto basis = model.algebra().basis;
        const auto e_leak = snapshot(model.encode(target.x_true), basis);
        const auto records =
            snapshot_inversion(model, basis, e_leak, target.x_true, target.x_init, settings);
        const std::string name = to_string(v);
        double best50 = records.front().mse_strong;
        for (const auto &r : records) {
            csv.cell(r.iteration).cell(name).cell(r.inversion_loss).cell(r.mse_strong).end_row();
            if (r.iteration <= 50) {
                best50 = std::min(best50, r.mse_strong);
            }
        }
        metrics["min_mse_strong_first50." + name] = best50;
        metrics["final_mse_strong." + name] = records.back().mse_strong;
        metrics["final_inversion_loss." + name] = records.back().inversion_loss;
    }
    out.write("strong.csv", csv.text());
}

void run_landscape(const ExperimentConfig &cfg, Outputs &out, Metrics &metrics) {
    const auto data = make_moons(cfg.n_samples, cfg.noise_sigma, cfg.seeds.data);
    const auto target = pick_attack_target(cfg, data);
    metrics["target_index"] = static_cast<double>(target.index);
    for (auto v : canonical_variants(cfg.variants)) {
        const Model model(variant_model_config(cfg, v));
        const auto basis = model.algebra().basis;
        const auto e_leak = snapshot(model.encode(target.x_true), basis);
        const auto land = landscape_scan(model, basis, e_leak, cfg.grid);
        CsvWriter csv({"x0", "x1", "loss"});
        for (std::size_t i = 0; i < land.grid; ++i) {
            for (std::size_t j = 0; j < land.grid; ++j) {
                csv.cell(land.axis[i]).cell(land.axis[j]).cell(land.values[i * land.grid + j]);
                csv.end_row();
            }
        }
        const std::string name = to_string(v);
        out.write("landscape_" + name + ".csv", csv.text());
        metrics["local_minima." + name] = static_cast<double>(land.local_minima);
    }
}

void run_dla_info(const ExperimentConfig &cfg, Outputs &out, Metrics &metrics) {
    const auto data = make_moons(cfg.n_samples, cfg.noise_sigma, cfg.seeds.data);
    json report;
    std::ostringstream txt;
    for (auto v : canonical_variants(cfg.variants)) {
        const Model model(variant_model_config(cfg, v));
        const auto alg = model.algebra();
        DlaBasis dla = alg.dla;
        dla.set_observable(alg.absorbed.frame_observable(model.observable()));
        const std::string name = to_string(v);

        json words = json::array();
        for (const auto &w : alg.dla.words()) {
            words.push_back(w.label());
        }
        json module_words = json::array();
        for (const auto &w : alg.basis.words()) {
            module_words.push_back(w.label());
        }
        json mu = json::array();
        for (Eigen::Index i = 0; i < alg.basis.mu().size(); ++i) {
            mu.push_back(alg.basis.mu()(i));
        }
        json purity = json::array();
        std::vector<double> pvals;
        for (std::size_t k = 0; k < cfg.purity_inputs; ++k) {
            const std::size_t idx = k * data.size() / cfg.purity_inputs;
            const double p = generalized_purity(model.encode(data.scaled(idx)), alg.basis);
            purity.push_back({{"index", idx}, {"value", p}});
            pvals.push_back(p);
        }
        const double pmin = *std::min_element(pvals.begin(), pvals.end());
        report[name] = {{"encoder", to_string(model.config().encoder)},
                        {"n_qubits", cfg.n_qubits},
                        {"ansatz_layers", cfg.ansatz_layers},
                        {"observable", model.config().observable.label()},
                        {"generators", [&] {
                             json g = json::array();
                             for (const auto &p : alg.absorbed.generators) {
                                 g.push_back(p.label());
                             }
                             return g;
                         }()},
                        {"dla_dim", alg.dla.dim()},
                        {"dla_words", words},
                        {"observable_in_dla", dla.spans_observable(1e-12)},
                        {"observable_residual_outside_dla", dla.observable_residual()},
                        {"module_dim", alg.basis.dim()},
                        {"module_words", module_words},
                        {"mu", mu},
                        {"generalized_purity", purity},
                        {"generalized_purity_min", pmin},
                        {"generalized_purity_mean", mean(pvals)}};
        metrics["dla_dim." + name] = static_cast<double>(alg.dla.dim());
        metrics["module_dim." + name] = static_cast<double>(alg.basis.dim());
        metrics["generalized_purity_min." + name] = pmin;

        txt << "[" << name << "]\n"
            << "encoder: " << to_string(model.config().encoder) << "\n"
            << "observable: " << model.config().observable.label() << "\n"
            << "dla dim: " << alg.dla.dim() << "\n"
            << "dla words:";
        for (const auto &w : alg.dla.words()) {
            txt << " " << w.label();
        }
        txt << "\nobservable in dla: " << (dla.spans_observable(1e-12) ? "yes" : "no")
            << "\nsnapshot basis dim: " << alg.basis.dim() << "\nsnapshot basis:";
        for (const auto &w : alg.basis.words()) {
            txt << " " << w.label();
        }
        txt << "\nmu:";
        for (Eigen::Index i = 0; i < alg.basis.mu().size(); ++i) {
            txt << " " << format_double(alg.basis.mu()(i));
        }
        txt << "\ngeneralized purity (min, mean): " << format_double(pmin) << ", "
            << format_double(mean(pvals)) << "\n\n";
    }
    out.write("dla_info.json", report.dump(2) + "\n");
    out.write("dla_info.txt", txt.str());
}

} // namespace

RunResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    std::filesystem::create_directories(config.out_dir);
    Outputs out(config.out_dir);
    Metrics metrics;
    try {
        switch (config.experiment) {
        case Experiment::Train:
            run_train(config, out, metrics);
            break;
        case Experiment::AttackWeak:
            run_attack_weak(config, out, metrics);
            break;
        case Experiment::AttackStrong:
            run_attack_strong(config, out, metrics);
            break;
        case Experiment::Landscape:
            run_landscape(config, out, metrics);
            break;
        case Experiment::DlaInfo:
            run_dla_info(config, out, metrics);
            break;
        }
        json manifest;
        manifest["artifact"] = "vqcshield";
        manifest["version"] = std::string(artifact_version);
        manifest["experiment"] = to_string(config.experiment);
        manifest["config"] = json::parse(config.to_json());
        manifest["threads"] = worker_count();
        manifest["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        json files = json::array();
        for (const auto &f : out.files()) {
            files.push_back({{"path", f.filename().generic_string()},
                             {"bytes", std::filesystem::file_size(f)},
                             {"sha256", sha256_file(f)}});
        }
        manifest["files"] = files;
        manifest["metrics"] = metrics;
        out.write("manifest.json", manifest.dump(2) + "\n");
    } catch (...) {
        out.discard();
        throw;
    }
    return {out.files(), metrics};
}

} // namespace vqcshield
