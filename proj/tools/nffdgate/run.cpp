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

#include "run.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>

#include "nffd/errors.hpp"
#include "nffd/fresnel.hpp"
#include "nffd/lattice.hpp"
#include "nffd/pipeline.hpp"
#include "nffd/search.hpp"

namespace nffdgate {

namespace {

using nffd::ConfigError;
using nffd::CsvTable;
using nffd::StepReport;

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

nffd::Step1Config step1_config(const RunConfig& c) {
    nffd::Step1Config s;
    s.a_ini = c.number("a_ini");
    s.a_fin = c.number("a_fin");
    s.r_max = c.number("r_max");
    s.nr = c.count("nr");
    s.z_lo = c.number("z_lo");
    s.z_hi = c.number("z_hi");
    s.nz = c.count("nz");
    s.apertures = c.count("apertures");
    s.dt = c.number("dt");
    s.sample_every = c.count("sample_every");
    s.cache_dir = c.text("cache_dir");
    return s;
}

nffd::Step2Config step2_config(const RunConfig& c) {
    nffd::Step2Config s;
    s.geometry = nffd::step2_geometry_from_string(c.text("geometry"));
    s.a_fin = c.number("a_fin");
    s.x_half = c.number("x_half");
    s.nx = c.count("nx");
    s.y_half = c.number("y_half");
    s.ny = c.count("ny");
    s.z_half = c.number("z_half");
    s.nz = c.count("nz");
    s.dt = c.number("dt");
    s.sample_every = c.count("sample_every");
    s.wave_factor = c.number("wave_factor");
    return s;
}

nffd::WeightConvention convention_from_string(const std::string& s) {
    if (s == "hyperfine") return nffd::WeightConvention::hyperfine;
    if (s == "mandel") return nffd::WeightConvention::mandel;
    throw ConfigError("unknown convention: " + s);
}

nffd::QubitState state_from_int(int s) {
    if (s == 0) return nffd::QubitState::zero;
    if (s == 1) return nffd::QubitState::one;
    throw ConfigError("state must be 0 or 1");
}

nffd::Step3Config step3_config(const RunConfig& c) {
    nffd::Step3Config s;
    s.n = c.integer("n");
    s.state = state_from_int(c.integer("state"));
    s.convention = convention_from_string(c.text("convention"));
    s.rho_max = c.number("rho_max");
    s.nrho = c.count("nrho");
    s.points_per_cell = c.count("points_per_cell");
    s.margin = c.number("margin");
    s.dt = c.number("dt");
    s.wrap = c.flag("wrap");
    s.sample_every = c.count("sample_every");
    s.leakage_limit = c.number("leakage_limit");
    s.wave_factor = c.number("wave_factor");
    return s;
}

nffd::Step4Config step4_config(const RunConfig& c) {
    nffd::Step4Config s;
    s.rho_max = c.number("rho_max");
    s.nrho = c.count("nrho");
    s.points_per_cell = c.count("points_per_cell");
    s.dt = c.number("dt");
    s.wave_factor = c.number("wave_factor");
    if (auto t = c.optional_number("t_hold_ms")) s.t_hold_s = *t * 1e-3;
    return s;
}

CsvTable summary_table(const StepReport& r, bool nffd_time) {
    CsvTable t({nffd_time ? "tau_tauF" : "tau_tauOL", "tau_us", "fidelity_abs", "fidelity_re",
                "fidelity_im", "norm_drift", "steps", "dt_scaled"});
    t.add_row({r.duration_scaled, r.duration_s * 1e6, r.final_fidelity, r.overlap.real(),
               r.overlap.imag(), r.norm_drift, static_cast<double>(r.steps), r.dt});
    return t;
}

Json report_json(const StepReport& r) {
    Json j{{"step", std::string(nffd::to_string(r.id))},
           {"duration_us", r.duration_s * 1e6},
           {"fidelity_abs", r.final_fidelity},
           {"norm_drift", r.norm_drift}};
    if (r.centroid) j["centroid_lambdaOL"] = *r.centroid;
    return j;
}

Json convergence_json(const StepReport& base, const StepReport& fine) {
    return {{"fidelity", base.final_fidelity},
            {"refined_fidelity", fine.final_fidelity},
            {"delta", std::abs(fine.final_fidelity - base.final_fidelity)}};
}

// ---------------------------------------------------------------------------

Artifacts fresnel_sweep(const RunConfig& c) {
    const auto p = c.params();
    const double lo = c.number("a_min"), hi = c.number("a_max");
    const std::size_t n = c.count("count");
    CsvTable t({"a_lambdaF", "z_m_lambdaF", "depth_U0", "curvature_zz_U0_per_lambdaF2",
                "curvature_rr_U0_per_lambdaF2", "omega_z_per_tauF"});
    for (std::size_t i = 0; i < n; ++i) {
        const double a = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1.0);
        const auto prof = nffd::find_trap_minimum({a}, p);
        t.add_row({a, prof.z_m, prof.depth_at_min, prof.curvature_zz, prof.curvature_rr,
                   prof.omega_z});
    }
    Artifacts out;
    out.tables.emplace_back("fresnel_sweep.csv", std::move(t));
    return out;
}

Artifacts step1(const RunConfig& c) {
    const auto p = c.params();
    const auto cfg = step1_config(c);
    const double tau = c.number("tau");
    const bool rev = c.flag("reverse");
    const nffd::Step1Simulation sim(p, cfg);
    const auto r = rev ? sim.run_reverse(tau) : sim.run(tau);
    Artifacts a;
    a.tables.emplace_back("step1_trace.csv", nffd::trace_table(r.trace, nffd::Scaling::nffd, p.tau_F));
    a.tables.emplace_back("step1_summary.csv", summary_table(r, true));
    a.summary = report_json(r);
    if (c.flag("snapshot")) a.snapshots.emplace_back("step1_target.wf", rev ? sim.initial_state() : sim.final_state());
    if (c.flag("refine_check")) {
        const nffd::Step1Simulation fine(p, cfg.refined());
        a.convergence = convergence_json(r, rev ? fine.run_reverse(tau) : fine.run(tau));
    }
    return a;
}

Artifacts step2(const RunConfig& c) {
    const auto p = c.params();
    const auto cfg = step2_config(c);
    const double tau = c.number("tau_us") * 1e-6 / p.tau_OL;
    const bool rev = c.flag("reverse");
    const nffd::Step2Simulation sim(p, cfg);
    const auto r = rev ? sim.run_reverse(tau) : sim.run(tau);
    Artifacts a;
    a.tables.emplace_back("step2_trace.csv", nffd::trace_table(r.trace, nffd::Scaling::lattice, p.tau_OL));
    a.tables.emplace_back("step2_summary.csv", summary_table(r, false));
    a.summary = report_json(r);
    if (c.flag("snapshot")) a.snapshots.emplace_back("step2_target.wf", rev ? sim.initial_state() : sim.final_state());
    if (c.flag("refine_check")) {
        const nffd::Step2Simulation fine(p, cfg.refined());
        a.convergence = convergence_json(r, rev ? fine.run_reverse(tau) : fine.run(tau));
    }
    return a;
}

Artifacts step3(const RunConfig& c) {
    const auto p = c.params();
    const auto cfg = step3_config(c);
    const double tau = c.number("tau_us") * 1e-6 / p.tau_OL;
    const bool rev = c.flag("reverse");
    const nffd::Step3Simulation sim(p, cfg);
    const auto r = rev ? sim.run_reverse(tau) : sim.run(tau);
    Artifacts a;
    a.tables.emplace_back("step3_trace.csv", nffd::trace_table(r.trace, nffd::Scaling::lattice, p.tau_OL));
    auto t = summary_table(r, false);
    a.tables.emplace_back("step3_summary.csv", std::move(t));
    CsvTable where({"centroid_lambdaOL", "target_lambdaOL"});
    where.add_row({*r.centroid, *r.target_centroid});
    a.tables.emplace_back("step3_centroid.csv", std::move(where));
    a.summary = report_json(r);
    if (c.flag("snapshot")) a.snapshots.emplace_back("step3_target.wf", rev ? sim.initial_state() : sim.final_state());
    if (c.flag("refine_check")) {
        const nffd::Step3Simulation fine(p, cfg.refined());
        a.convergence = convergence_json(r, rev ? fine.run_reverse(tau) : fine.run(tau));
    }
    return a;
}

void gate_tables(Artifacts& a, const nffd::Step4Result& s4) {
    CsvTable t({"quartic_lambdaOL_m3", "U_int_J", "U_int_over_h_Hz", "t_hold_ms", "chi_rad",
                "phase_error_rad"});
    t.add_row({s4.quartic, s4.U_int, s4.U_int / (2 * std::numbers::pi * nffd::constants::hbar),
               s4.t_hold_s * 1e3, s4.chi, s4.gate.phase_error()});
    a.tables.emplace_back("step4_summary.csv", std::move(t));
    CsvTable m({"row", "col", "re", "im"});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m.add_row({static_cast<double>(i), static_cast<double>(j), s4.gate.matrix()(i, j).real(),
                       s4.gate.matrix()(i, j).imag()});
    a.tables.emplace_back("step4_gate.csv", std::move(m));
}

Artifacts step4(const RunConfig& c) {
    const auto s4 = nffd::run_step4(c.params(), step4_config(c));
    Artifacts a;
    gate_tables(a, s4);
    a.summary = {{"t_hold_ms", s4.t_hold_s * 1e3}, {"chi_rad", s4.chi}};
    return a;
}

Artifacts gate(const RunConfig& c) {
    const auto p = c.params();
    nffd::Step4Config s4c;
    if (auto t = c.optional_number("t_hold_ms")) s4c.t_hold_s = *t * 1e-3;
    const auto s4 = nffd::run_step4(p, s4c);
    Artifacts a;
    gate_tables(a, s4);

    const double tau1 = c.number("tau1");
    const double tau2 = c.number("tau2_us") * 1e-6 / p.tau_OL;
    const double tau3 = c.number("tau3_us") * 1e-6 / p.tau_OL;
    nffd::GateReport g;
    if (c.flag("simulate")) {
        nffd::Step1Config c1;
        c1.cache_dir = c.text("cache_dir");
        nffd::Step2Config c2;
        c2.geometry = nffd::step2_geometry_from_string(c.text("geometry"));
        nffd::Step3Config c3;
        c3.n = c.integer("n");
        const nffd::Step1Simulation s1(p, c1);
        const nffd::Step2Simulation s2(p, c2);
        const nffd::Step3Simulation s3(p, c3);
        std::vector<StepReport> steps{s1.run(tau1),          s2.run(tau2),
                                      s3.run(tau3),          s3.run_reverse(tau3),
                                      s2.run_reverse(tau2),  s1.run_reverse(tau1)};
        g = nffd::gate_report(std::move(steps), s4.t_hold_s);
    } else {
        g = nffd::gate_report(tau1 * p.tau_F, tau2 * p.tau_OL, tau3 * p.tau_OL, s4.t_hold_s,
                              c.number("per_process_fidelity"), c.count("processes"));
    }

    CsvTable steps({"step", "duration_us", "fidelity_abs", "fidelity_re", "fidelity_im",
                    "norm_drift"});
    for (const auto& s : g.steps)
        steps.add_row({static_cast<double>(static_cast<int>(s.id)), s.duration_s * 1e6,
                       s.final_fidelity, s.overlap.real(), s.overlap.imag(), s.norm_drift});
    a.tables.emplace_back("gate_steps.csv", std::move(steps));
    CsvTable tot({"tau1_us", "tau2_us", "tau3_us", "t_hold_ms", "T_overall_ms", "processes",
                  "overall_fidelity_model"});
    tot.add_row({g.tau1_s * 1e6, g.tau2_s * 1e6, g.tau3_s * 1e6, g.t_hold_s * 1e3,
                 g.T_overall_s * 1e3, static_cast<double>(g.processes), g.overall_fidelity_model});
    a.tables.emplace_back("gate_summary.csv", std::move(tot));
    a.summary = {{"T_overall_ms", g.T_overall_s * 1e3},
                 {"overall_fidelity_model", g.overall_fidelity_model}};
    return a;
}

Artifacts gate_sweep(const RunConfig& c) {
    const auto p = c.params();
    const std::string step = c.text("step");
    std::function<StepReport(double)> run;
    std::unique_ptr<nffd::Step1Simulation> s1;
    std::unique_ptr<nffd::Step2Simulation> s2;
    std::unique_ptr<nffd::Step3Simulation> s3;
    double unit = 1e-6 / p.tau_OL;  // input unit -> scaled time
    if (step == "1") {
        nffd::Step1Config cfg;
        cfg.cache_dir = c.text("cache_dir");
        s1 = std::make_unique<nffd::Step1Simulation>(p, cfg);
        run = [&](double t) { return s1->run(t); };
        unit = 1.0;
    } else if (step == "2") {
        nffd::Step2Config cfg;
        cfg.geometry = nffd::step2_geometry_from_string(c.text("geometry"));
        s2 = std::make_unique<nffd::Step2Simulation>(p, cfg);
        run = [&](double t) { return s2->run(t); };
    } else {
        nffd::Step3Config cfg;
        cfg.n = c.integer("n");
        s3 = std::make_unique<nffd::Step3Simulation>(p, cfg);
        run = [&](double t) { return s3->run(t); };
    }
    const char* tau_col = step == "1" ? "tau_tauF" : "tau_us";

    const double lo = c.number("tau_min"), hi = c.number("tau_max");
    const std::size_t n = c.count("count");
    CsvTable t({tau_col, "fidelity_abs", "fidelity_re", "fidelity_im", "norm_drift"});
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1.0);
        const auto r = run(tau * unit);
        t.add_row({tau, r.final_fidelity, r.overlap.real(), r.overlap.imag(), r.norm_drift});
    }
    Artifacts a;
    a.tables.emplace_back("gate_sweep.csv", std::move(t));
    if (c.flag("search")) {
        nffd::SearchSettings ss;
        ss.target = c.number("target");
        ss.bracket_samples = std::max<std::size_t>(n, 3);
        const auto res = nffd::min_time_for_fidelity(
            [&](double tau) { return run(tau * unit).final_fidelity; }, lo, hi, ss);
        CsvTable s({tau_col, "fidelity_abs"});
        for (const auto& [tau, f] : res.samples) s.add_row({tau, f});
        a.tables.emplace_back("gate_search_samples.csv", std::move(s));
        a.summary = {{"tau", res.tau}, {"fidelity_abs", res.fidelity}};
    }
    return a;
}

Artifacts schedule_dump(const RunConfig& c) {
    const std::string kind = c.text("kind");
    const std::size_t n = c.count("samples");
    Artifacts a;
    if (kind == "aperture") {
        const nffd::ScalarSchedule s(nffd::ScheduleKind::aperture_ramp, 1.0, c.number("a_ini"),
                                     c.number("a_fin"));
        CsvTable t({"t_over_T", "a_lambdaF", "da_dt_lambdaF_per_T"});
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / (n - 1.0);
            t.add_row({u, s.value(u), s.derivative(u)});
        }
        a.tables.emplace_back("schedule.csv", std::move(t));
    } else if (kind == "crossfade") {
        CsvTable t({"t_over_T", "w_F", "w_OL"});
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / (n - 1.0);
            const auto w = nffd::crossfade_weights(u, 1.0);
            t.add_row({u, w.w_F, w.w_OL});
        }
        a.tables.emplace_back("schedule.csv", std::move(t));
    } else {
        const int m = c.integer("n");
        const bool wrap = c.flag("wrap");
        CsvTable t({"t_over_T", "theta_rad"});
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(i) / (n - 1.0);
            const double th = nffd::theta_schedule(u, m, 1.0);
            t.add_row({u, wrap ? nffd::eom_wrap(th) : th});
        }
        a.tables.emplace_back("schedule.csv", std::move(t));
    }
    return a;
}

}  // namespace

void validate(const RunConfig& c) {
    const auto e = c.experiment();
    if (e != Experiment::schedule_dump) (void)c.params();
    switch (e) {
        case Experiment::fresnel_sweep:
            require(c.number("a_min") >= 1.0 && c.number("a_max") <= 4.0 &&
                        c.number("a_max") >= c.number("a_min"),
                    "fresnel-sweep: need 1 <= a_min <= a_max <= 4");
            require(c.count("count") >= 1, "fresnel-sweep: count must be >= 1");
            break;
        case Experiment::step1:
            step1_config(c).validate();
            require(c.number("tau") >= 0.0, "step1: tau must be >= 0");
            break;
        case Experiment::step2:
            step2_config(c).validate();
            require(c.number("tau_us") >= 0.0, "step2: tau_us must be >= 0");
            break;
        case Experiment::step3:
            step3_config(c).validate();
            require(c.number("tau_us") > 0.0, "step3: tau_us must be > 0");
            break;
        case Experiment::step4: {
            const auto s = step4_config(c);
            require(s.rho_max > 0.0 && s.nrho >= 4 && s.points_per_cell >= 8 && s.dt > 0.0,
                    "step4: invalid grid");
            require(!s.t_hold_s || *s.t_hold_s >= 0.0, "step4: t_hold_ms must be >= 0");
            break;
        }
        case Experiment::gate:
            for (const char* k : {"tau1", "tau2_us", "tau3_us"})
                require(c.number(k) >= 0.0, std::string("gate: ") + k + " must be >= 0");
            require(c.number("tau3_us") > 0.0 || !c.flag("simulate"), "gate: tau3_us must be > 0");
            require(c.integer("n") >= 1, "gate: n must be >= 1");
            require(c.number("per_process_fidelity") >= 0.0 && c.number("per_process_fidelity") <= 1.0,
                    "gate: per_process_fidelity must lie in [0, 1]");
            (void)nffd::step2_geometry_from_string(c.text("geometry"));
            break;
        case Experiment::gate_sweep: {
            const auto s = c.text("step");
            require(s == "1" || s == "2" || s == "3", "gate-sweep: step must be 1, 2 or 3");
            require(c.number("tau_min") > 0.0 && c.number("tau_max") >= c.number("tau_min"),
                    "gate-sweep: need 0 < tau_min <= tau_max");
            require(c.count("count") >= 1, "gate-sweep: count must be >= 1");
            require(!c.flag("search") || c.number("tau_max") > c.number("tau_min"),
                    "gate-sweep: search needs tau_max > tau_min");
            require(c.integer("n") >= 1, "gate-sweep: n must be >= 1");
            (void)nffd::step2_geometry_from_string(c.text("geometry"));
            break;
        }
        case Experiment::schedule_dump: {
            const auto k = c.text("kind");
            require(k == "aperture" || k == "crossfade" || k == "theta",
                    "schedule-dump: kind must be aperture, crossfade or theta");
            require(c.count("samples") >= 2, "schedule-dump: samples must be >= 2");
            require(c.integer("n") >= 1, "schedule-dump: n must be >= 1");
            break;
        }
    }
}

Artifacts execute(const RunConfig& c) {
    switch (c.experiment()) {
        case Experiment::fresnel_sweep: return fresnel_sweep(c);
        case Experiment::step1: return step1(c);
        case Experiment::step2: return step2(c);
        case Experiment::step3: return step3(c);
        case Experiment::step4: return step4(c);
        case Experiment::gate: return gate(c);
        case Experiment::gate_sweep: return gate_sweep(c);
        case Experiment::schedule_dump: return schedule_dump(c);
    }
    throw ConfigError("unhandled experiment");
}

}  // namespace nffdgate
