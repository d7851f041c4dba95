// Copyright 2026 The nffdgate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "nffd/errors.hpp"
#include "run.hpp"

namespace {

enum Exit { ok = 0, other = 1, config = 2, integrity = 3, convergence = 4, bracket = 5 };

struct Leaf {
    nffdgate::Experiment experiment;
    CLI::App* app = nullptr;
};

std::filesystem::path output_dir(const std::string& flag, nffdgate::Experiment e) {
    if (!flag.empty()) return flag;
    const char* root = std::getenv("NFFDGATE_OUT");
    return std::filesystem::path(root && *root ? root : "nffdgate-out") /
           std::string(nffdgate::to_string(e));
}

int run(nffdgate::Experiment e, const std::vector<std::string>& configs,
        const std::vector<std::string>& sets, const std::string& out, bool dry_run) {
    nffdgate::RunConfig cfg(e);
    for (const auto& f : configs) cfg.merge_file(f);
    for (const auto& s : sets) cfg.set(s);
    nffdgate::validate(cfg);
    if (dry_run) {
        std::cout << cfg.to_json().dump(2) << '\n';
        return ok;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto artifacts = nffdgate::execute(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto dir = output_dir(out, e);
    const auto manifest = nffdgate::write_outputs(cfg, artifacts, dir, wall);
    std::cout << manifest["summary"].dump() << '\n' << "wrote " << dir.string() << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-field trap to lattice gate simulations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NFFDGATE_VERSION);

    std::vector<std::string> configs, sets;
    std::string out;
    bool dry_run = false;
    std::vector<Leaf> leaves;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                    nffdgate::Experiment e) {
        auto* sub = parent->add_subcommand(name, help);
        sub->add_option("--config", configs, "JSON config or run manifest (repeatable)")
            ->check(CLI::ExistingFile);
        sub->add_option("--set", sets, "Override one setting, key=value (repeatable)");
        sub->add_option("--out", out, "Output directory");
        sub->add_flag("--dry-run", dry_run, "Validate and print the resolved config");
        leaves.push_back({e, sub});
    };
    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        return g;
    };

    using nffdgate::Experiment;
    leaf(group("fresnel", "Aperture trap characterisation"), "sweep",
         "Trap minimum, depth and curvature versus aperture radius", Experiment::fresnel_sweep);
    leaf(group("step1", "Aperture ramp in the near-field trap"), "run", "Run one ramp",
         Experiment::step1);
    leaf(group("step2", "Trap to lattice crossfade"), "run", "Run one crossfade", Experiment::step2);
    leaf(group("step3", "State-dependent lattice transport"), "run", "Run one transport",
         Experiment::step3);
    leaf(group("step4", "Collisional phase"), "run", "Interaction energy, hold time and gate",
         Experiment::step4);
    auto* gate = group("gate", "Whole gate sequence");
    leaf(gate, "run", "Total time and fidelity of the gate", Experiment::gate);
    leaf(gate, "sweep", "Fidelity versus duration of one step", Experiment::gate_sweep);
    leaf(group("schedule", "Control schedules"), "dump", "Sample a control schedule",
         Experiment::schedule_dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return config;
    }

    try {
        for (const auto& l : leaves)
            if (l.app->parsed()) return run(l.experiment, configs, sets, out, dry_run);
        return other;
    } catch (const nffd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config;
    } catch (const nffd::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return config;
    } catch (const nffd::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << '\n';
        return config;
    } catch (const nffd::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return integrity;
    } catch (const nffd::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return convergence;
    } catch (const nffd::BracketError& e) {
        std::cerr << "bracket error: " << e.what() << '\n';
        return bracket;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return other;
    }
}
