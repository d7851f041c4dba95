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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   nffd_acceptance [--cache DIR] [--only 1,3,...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nffd/errors.hpp"
#include "nffd/fresnel.hpp"
#include "nffd/lattice.hpp"
#include "nffd/pipeline.hpp"
#include "nffd/potential.hpp"
#include "nffd/propagator.hpp"
#include "nffd/search.hpp"
#include "nffd/units.hpp"

using namespace nffd;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (detail.tellp() > 0) detail << "; ";
        detail << what << (ok ? "" : " [x]");
    }
};

std::string fmt(const char* f, auto... v) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

// Largest norm drift seen by any propagation in this run, fed into criterion 8.
double g_max_drift = 0.0;
std::size_t g_runs = 0;

StepReport track(StepReport r) {
    g_max_drift = std::max(g_max_drift, r.norm_drift);
    ++g_runs;
    return r;
}

std::filesystem::path g_cache;

// Step 1 default-versus-refined |F| change, set by criterion 3.
std::optional<double> g_step1_delta;

// ---------------------------------------------------------------------------

void trap_geometry(Outcome& o) {
    const auto p = default_params();
    const double z15 = find_trap_minimum({1.5}, p).z_m;
    const double z28 = find_trap_minimum({2.8}, p).z_m;
    o.check(rel(z15, 2.0) <= 0.05, fmt("z_m(1.5) = %.4f, want 2.0 +-5%%", z15));
    o.check(rel(z28, 8.0) <= 0.05, fmt("z_m(2.8) = %.4f, want 8.0 +-5%%", z28));
    double prev = -1.0;
    bool mono = true;
    for (int i = 0; i <= 36; ++i) {
        const double z = find_trap_minimum({1.2 + 0.05 * i}, p).z_m;
        mono = mono && z > prev;
        prev = z;
    }
    o.check(mono, "z_m increasing over a in [1.2, 3.0] (37 samples)");
}

// On-axis field of a uniformly lit disk, exact.
cd axial_field(double z, double a) {
    const double k = 2.0 * kPi, R = std::hypot(z, a);
    return std::exp(cd(0.0, k * z)) - (z / R) * std::exp(cd(0.0, k * R));
}

void quadrature_oracle(Outcome& o) {
    double worst = 0.0;
    for (double a : {1.2, 1.5, 2.2, 2.8})
        for (double z : {0.3, 1.0, 2.0, 4.0, 8.0, 12.0}) {
            const cd e = rs_field({0.0, 0.0, z}, {a});
            worst = std::max(worst, std::abs(e - axial_field(z, a)) / std::abs(axial_field(z, a)));
        }
    o.check(worst < 1e-6, fmt("max relative deviation %.2e over 4 radii x 6 heights, want < 1e-6", worst));
}

void step1(Outcome& o) {
    const auto p = default_params();
    Step1Config cfg;
    cfg.cache_dir = g_cache;
    const Step1Simulation sim(p, cfg);
    std::vector<double> f;
    for (double tau : {1500.0, 2000.0, 2500.0}) f.push_back(track(sim.run(tau)).final_fidelity);
    o.check(std::abs(f[2] - 0.99) <= 0.01, fmt("|F|(2500) = %.5f, want 0.99 +-0.01", f[2]));
    o.check(f[0] < f[1] && f[1] < f[2],
            fmt("|F| at 1500/2000/2500 = %.4f/%.4f/%.4f increasing", f[0], f[1], f[2]));
    const Step1Simulation fine(p, cfg.refined());
    const double ff = track(fine.run(2500.0)).final_fidelity;
    g_step1_delta = std::abs(ff - f[2]);
    o.check(std::abs(ff - 0.99) <= 0.005, fmt("refined |F|(2500) = %.5f, want 0.99 +-0.005", ff));
}

void step2(Outcome& o) {
    const auto p = default_params();
    const Step2Simulation sim(p, {});
    SearchSettings s;
    s.target = 0.99;
    s.tolerance = 5e-4;
    s.bracket_samples = 4;
    const auto res = min_time_for_fidelity(
        [&](double us) { return track(sim.run(us * 1e-6 / p.tau_OL)).final_fidelity; }, 300.0,
        750.0, s);
    std::ostringstream samples;
    for (const auto& [t, f] : res.samples) samples << fmt(" %.0f:%.4f", t, f);
    o.check(rel(res.tau, 560.0) <= 0.10,
            fmt("tau(0.99) = %.1f us (|F| %.5f), want 560 +-10%%;", res.tau, res.fidelity) +
                " samples" + samples.str());
}

void step3(Outcome& o) {
    const auto p = default_params();
    const auto us = [&](double t) { return t * 1e-6 / p.tau_OL; };
    Step3Config c3;
    c3.n = 3;
    const double f3 = track(Step3Simulation(p, c3).run(us(577.0))).final_fidelity;
    o.check(std::abs(f3 - 0.99) <= 0.01, fmt("n=3 |F|(577 us) = %.5f, want 0.99 +-0.01", f3));

    Step3Config c6;
    c6.n = 6;
    const Step3Simulation sim6(p, c6);
    const double f6 = track(sim6.run(us(1280.0))).final_fidelity;
    o.check(std::abs(f6 - 0.99) <= 0.01, fmt("n=6 |F|(1280 us) = %.5f, want 0.99 +-0.01", f6));

    // Wider margin so the slower, hotter runs stay clear of the box faces.
    c6.margin = 2.5;
    const Step3Simulation wide(p, c6);
    // A run that trips the leakage guard is reported and left out of the count.
    std::vector<double> f;
    std::ostringstream samples;
    for (double t = 1200.0; t <= 1650.0 + 1e-9; t += 50.0) {
        try {
            f.push_back(track(wide.run(us(t))).final_fidelity);
            samples << fmt(" %.0f:%.4f", t, f.back());
        } catch (const IntegrityError&) {
            samples << fmt(" %.0f:leak", t);
        }
    }
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) maxima += f[i] > f[i - 1] && f[i] > f[i + 1];
    o.check(maxima >= 2, fmt("n=6 sweep 1200-1650 us has %d local maxima, want >= 2;", maxima) +
                             samples.str());
}

void totals(Outcome& o) {
    const auto p = default_params();
    const auto s4 = run_step4(p);
    const double t_hold = s4.t_hold_s;
    const auto g = gate_report(2500.0 * p.tau_F, 560e-6, 1280e-6, t_hold);
    o.check(within(t_hold, 1e-3, 4e-3), fmt("t_hold = %.3f ms, want 1-4 ms", t_hold * 1e3));
    o.check(rel(g.T_overall_s, 7.87e-3) <= 0.10,
            fmt("T_overall = %.3f ms, want 7.87 +-10%%", g.T_overall_s * 1e3));
    const double model = std::pow(0.99, 12);
    o.check(g.overall_fidelity_model == model && std::abs(model - 0.8864) < 5e-5,
            fmt("0.99^12 = %.6f", g.overall_fidelity_model));
}

void scaling_law(Outcome& o) {
    const auto p = default_params();
    auto cfg = LatticeConfig::from_params(p);
    const double base = hold_time(harmonic_onsite_interaction(cfg, p));
    cfg.V0 *= 10.0;
    const double deep = hold_time(harmonic_onsite_interaction(cfg, p));
    o.check(rel(deep / base, 0.178) <= 1e-3,
            fmt("t_hold(10 V0) / t_hold(V0) = %.5f, want 0.178 within 1e-3 relative", deep / base));
}

// Ground state of -c lap + kappa q^2 (omega = 2) on a reduced-cylindrical grid.
double harmonic_energy_error() {
    const double c = 0.01, kappa = 100.0;
    const Grid g = Grid::reduced_cylindrical(0.5, 256, Axis::spanning(-0.5, 0.5, 513));
    const SampledPotential v(g, 0.0, [&](double, std::span<const double> q) {
        return kappa * (q[0] * q[0] + q[1] * q[1]);
    });
    PropagatorConfig pc;
    pc.kinetic = c;
    pc.dt = 0.01;
    return rel(ground_state(v, Scaling::lattice, pc).energy, 3.0);
}

void properties(Outcome& o) {
    const auto p = default_params();
    const auto us = [&](double t) { return t * 1e-6 / p.tau_OL; };

    Step3Config c3;
    c3.n = 3;
    const Step3Simulation sim(p, c3);
    const auto fwd = track(sim.run(us(577.0)));
    const auto rev = track(sim.run_reverse(us(577.0)));
    o.check(std::abs(fwd.final_fidelity - rev.final_fidelity) < 1e-6,
            fmt("forward/reverse |F| differ by %.2e", std::abs(fwd.final_fidelity - rev.final_fidelity)));

    c3.wrap = !c3.wrap;
    const auto other = track(Step3Simulation(p, c3).run(us(577.0)));
    const auto cfg = LatticeConfig::from_params(p);
    const auto w = QubitBasisWeights::of(QubitState::one);
    double dv = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Vec3 q{0.013 * i - 1.3, 0.2, 0.1};
        const double th = 0.137 * i;
        dv = std::max(dv, std::abs(state_dependent_potential(q, th, w, cfg) -
                                   state_dependent_potential(q, eom_wrap(th), w, cfg)));
    }
    o.check(dv <= 1e-12 * cfg.V0 && std::abs(other.overlap - fwd.overlap) < 1e-10,
            fmt("theta wrap: max |dV| %.1e E_r, run overlap change %.1e", dv,
                std::abs(other.overlap - fwd.overlap)));

    double slope = 0.0;
    for (auto kind : {ScheduleKind::aperture_ramp, ScheduleKind::crossfade, ScheduleKind::polarization_angle}) {
        const ScalarSchedule s(kind, 7.0, 0.3, 2.5);
        slope = std::max({slope, std::abs(s.derivative(0.0)), std::abs(s.derivative(7.0))});
    }
    o.check(slope < 1e-14, fmt("schedule end slopes %.1e", slope));

    const double e = harmonic_energy_error();
    o.check(e < 1e-4, fmt("harmonic ground energy error %.2e", e));

    c3.wrap = !c3.wrap;
    const auto fine = track(Step3Simulation(p, c3.refined()).run(us(577.0)));
    const double delta = std::abs(fine.final_fidelity - fwd.final_fidelity);
    o.check(delta < 1e-4, fmt("step 3 (n=3) |F| change under 2x refinement %.1e", delta));
    if (g_step1_delta)
        o.check(*g_step1_delta < 1e-4,
                fmt("step 1 |F| change under 2x refinement %.1e", *g_step1_delta));

    o.check(g_max_drift < 1e-6, fmt("max norm drift %.1e over %zu runs", g_max_drift, g_runs));
}

void parameters(Outcome& o) {
    const auto p = default_params();
    const double d = detuning(p.lambda_F, p.lambda_0);
    const double life = heating_lifetime(p, trap_rabi_frequency(p, d), d);
    o.check(rel(p.alpha, 2.2e-4) <= 0.05, fmt("alpha = %.4e, want 2.2e-4 +-5%%", p.alpha));
    o.check(rel(d, -4.1e11) <= 0.02, fmt("Delta = %.4e rad/s, want -4.1e11 +-2%%", d));
    o.check(within(life, 0.1, 10.0), fmt("heating lifetime %.2f s, want order 1 s", life));
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cache" && i + 1 < argc) {
            g_cache = argv[++i];
        } else if (a == "--only" && i + 1 < argc) {
            std::stringstream ss(argv[++i]);
            for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
        } else {
            std::fprintf(stderr, "usage: %s [--cache DIR] [--only 1,2,...]\n", argv[0]);
            return 2;
        }
    }

    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
        {"trap geometry", trap_geometry},
        {"quadrature oracle", quadrature_oracle},
        {"step 1 aperture ramp", step1},
        {"step 2 crossfade time", step2},
        {"step 3 transport", step3},
        {"gate totals", totals},
        {"hold time scaling", scaling_law},
        {"property suite", properties},
        {"parameter consistency", parameters},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %d %s %s (%.0f s): %s\n", id, o.pass ? "PASS" : "FAIL",
                    criteria[i].first, s, o.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
