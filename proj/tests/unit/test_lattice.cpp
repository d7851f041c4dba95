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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nffd/errors.hpp"
#include "nffd/lattice.hpp"

using namespace nffd;

namespace {

constexpr double kPi = std::numbers::pi;

// Maximum of the axial profile over one period by dense scan, and its location.
std::pair<double, double> profile_peak(double theta, const QubitBasisWeights& w,
                                       const LatticeConfig& cfg, double centre) {
    double best = -1.0, at = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
        const double x = centre + 0.25 * i / 2000.0;
        const double v = state_dependent_profile(x, theta, w, cfg);
        if (v > best) best = v, at = x;
    }
    return {best, at};
}

Wavefunction harmonic_ground_state(const Grid& g, const HarmonicWell& h) {
    auto wf = Wavefunction::from_psi(g, Scaling::lattice, [&](std::span<const double> q) {
        const double r = q[0], x = q[1];
        return std::complex<double>(std::exp(-r * r / (2 * h.width_rho * h.width_rho) -
                                             x * x / (2 * h.width_x * h.width_x)),
                                    0.0);
    });
    wf.normalize();
    return wf;
}

}  // namespace

TEST_SUITE("lattice") {
    TEST_CASE("lattice potential and envelope") {
        LatticeConfig cfg;
        CHECK(lattice_potential({0, 0, 0}, cfg) == -40.0);
        CHECK(lattice_potential({0.25, 0, 0}, cfg) == doctest::Approx(0.0).scale(1.0));
        CHECK(lattice_potential({0.5, 0, 0}, cfg) == doctest::Approx(-40.0));
        CHECK(lattice_envelope(2.0, 0.0, cfg) == doctest::Approx(std::exp(-0.5)));
        cfg.z_center = 3.0;
        CHECK(lattice_envelope(0.0, 3.0, cfg) == 1.0);
        CHECK(cfg.lattice_constant() == doctest::Approx(0.5));
        cfg.wave_factor = 2.0;
        CHECK(cfg.lattice_constant() == doctest::Approx(0.25));
        CHECK_THROWS_AS((LatticeConfig{0.0}).validate(), ConfigError);
        CHECK_FALSE((LatticeConfig{40.0, 3.0}).waist_in_regime());
    }

    TEST_CASE("defaults follow the physical parameters") {
        const auto cfg = LatticeConfig::from_params(default_params());
        CHECK(cfg.V0 == doctest::Approx(40.0));
        CHECK(cfg.waist == doctest::Approx(4.0));
    }

    TEST_CASE("qubit weights and directions") {
        const auto one = QubitBasisWeights::of(QubitState::one);
        const auto zero = QubitBasisWeights::of(QubitState::zero);
        CHECK(one.c_plus == 0.75);
        CHECK(zero.c_plus == 0.25);
        CHECK(one.valid());
        CHECK(one.direction() == -zero.direction());
        const auto m1 = QubitBasisWeights::of(QubitState::one, WeightConvention::mandel);
        CHECK(m1.c_minus == 1.0);
        CHECK(m1.direction() != 0);
        QubitBasisWeights bad;
        bad.c_plus = 0.9;
        CHECK_FALSE(bad.valid());
    }

    TEST_CASE("profile limits") {
        const LatticeConfig cfg;
        for (auto st : {QubitState::zero, QubitState::one}) {
            const auto w = QubitBasisWeights::of(st);
            for (double x : {-0.3, 0.0, 0.07, 0.2, 0.41}) {
                const double c = std::cos(cfg.k() * x), s = std::sin(cfg.k() * x);
                CHECK(state_dependent_profile(x, 0.0, w, cfg) == doctest::Approx(c * c));
                CHECK(state_dependent_profile(x, kPi / 2, w, cfg) == doctest::Approx(s * s));
                for (double th : {0.3, 1.1, 2.9})
                    CHECK(state_dependent_profile(x, th + kPi, w, cfg) ==
                          doctest::Approx(state_dependent_profile(x, th, w, cfg)));
                CHECK(state_dependent_potential({x, 0, 0}, 0.4, w, cfg) ==
                      doctest::Approx(-cfg.V0 * state_dependent_profile(x, 0.4, w, cfg)));
            }
        }
    }

    TEST_CASE("depth modulation matches the phasor amplitude") {
        const LatticeConfig cfg;
        for (auto conv : {WeightConvention::hyperfine, WeightConvention::mandel}) {
            const auto w = QubitBasisWeights::of(QubitState::zero, conv);
            for (double th = 0.0; th < kPi; th += 0.17) {
                const double d = w.c_plus - w.c_minus;
                const double c2 = std::cos(2 * th), s2 = std::sin(2 * th);
                const double oracle = 0.5 + 0.5 * std::sqrt(c2 * c2 + d * d * s2 * s2);
                CHECK(profile_peak(th, w, cfg, 0.0).first == doctest::Approx(oracle).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("a full rotation moves each state by one site in opposite directions") {
        const LatticeConfig cfg;
        for (auto st : {QubitState::zero, QubitState::one}) {
            const auto w = QubitBasisWeights::of(st);
            double x = 0.0;
            for (int i = 1; i <= 200; ++i) x = profile_peak(kPi * i / 200.0, w, cfg, x).second;
            CHECK(x == doctest::Approx(w.direction() * cfg.lattice_constant()).epsilon(1e-3));
        }
    }

    TEST_CASE("schedules") {
        const ScalarSchedule s(ScheduleKind::aperture_ramp, 10.0, 1.5, 2.8);
        CHECK(s.value(0.0) == 1.5);
        CHECK(s.value(10.0) == doctest::Approx(2.8).epsilon(1e-15));
        CHECK(s.value(5.0) == doctest::Approx(2.15));
        CHECK(s.derivative(0.0) == doctest::Approx(0.0).scale(1.0));
        CHECK(s.derivative(10.0) == doctest::Approx(0.0).scale(1.0));
        const double h = 1e-5;
        CHECK(s.derivative(3.0) == doctest::Approx((s.value(3 + h) - s.value(3 - h)) / (2 * h)));
        CHECK(s.reversed().value(3.0) == doctest::Approx(s.value(7.0)));
        CHECK_THROWS(s.value(10.5));
        CHECK_THROWS_AS(ScalarSchedule(ScheduleKind::crossfade, -1.0, 0, 1), DomainError);

        CHECK(aperture_schedule(2.0, 1.5, 2.8, 4.0) == doctest::Approx(s.value(5.0)));
        CHECK(theta_schedule(3.0, 6, 3.0) == doctest::Approx(6 * kPi));
        for (double t : {0.0, 0.3, 0.5, 0.9}) {
            const auto w = crossfade_weights(t, 0.9);
            CHECK(w.w_F + w.w_OL == doctest::Approx(1.0));
        }
        CHECK(crossfade_weights(0.9, 0.9).w_OL == doctest::Approx(1.0));
        for (double th : {-0.2, 0.0, 3.0, 3 * kPi + 0.1, 19.0}) {
            const double w = eom_wrap(th);
            CHECK(w >= 0.0);
            CHECK(w < kPi);
            CHECK(std::remainder(th - w, kPi) == doctest::Approx(0.0).scale(1.0));
        }
    }

    TEST_CASE("harmonic well of a deep lattice") {
        const LatticeConfig cfg;
        const auto h = harmonic_well(cfg);
        CHECK(h.omega_x == doctest::Approx(2.0 * std::sqrt(cfg.V0)));
        CHECK(h.width_x == doctest::Approx(0.0633).epsilon(2e-3));
        CHECK(h.width_rho == doctest::Approx(0.2668).epsilon(2e-3));
        CHECK(h.zero_point_energy() == doctest::Approx(0.5 * h.omega_x + h.omega_rho));
        CHECK(h.quartic_integral() ==
              doctest::Approx(1.0 / (std::pow(2 * kPi, 1.5) * h.width_x * h.width_rho * h.width_rho)));
    }

    TEST_CASE("quartic integral of a gridded Gaussian matches the closed form") {
        const auto h = harmonic_well(LatticeConfig{});
        const auto g = Grid::reduced_cylindrical(2.0, 160, Axis::spanning(-0.5, 0.5, 401));
        const auto wf = harmonic_ground_state(g, h);
        CHECK(quartic_integral(wf) == doctest::Approx(h.quartic_integral()).epsilon(1e-2));

        const auto c = Grid::cartesian3d(Axis::spanning(-0.5, 0.5, 101), Axis::spanning(-1.6, 1.6, 81),
                                         Axis::spanning(-1.6, 1.6, 81));
        auto wc = Wavefunction::from_psi(c, Scaling::lattice, [&](std::span<const double> q) {
            return std::complex<double>(std::exp(-q[0] * q[0] / (2 * h.width_x * h.width_x) -
                                                 (q[1] * q[1] + q[2] * q[2]) /
                                                     (2 * h.width_rho * h.width_rho)),
                                        0.0);
        });
        wc.normalize();
        CHECK(quartic_integral(wc) == doctest::Approx(h.quartic_integral()).epsilon(1e-2));
        CHECK_THROWS_AS(
            quartic_integral(Wavefunction(Grid::cartesian2d(Axis::spanning(0, 1, 3), Axis::spanning(0, 1, 3)),
                                          Scaling::lattice)),
            ContractError);
    }

    TEST_CASE("on-site interaction routes agree") {
        const auto p = default_params();
        const auto h = harmonic_well(LatticeConfig{});
        const auto g = Grid::reduced_cylindrical(2.0, 160, Axis::spanning(-0.5, 0.5, 401));
        const auto wf = harmonic_ground_state(g, h);
        const double u = onsite_interaction(wf, p);
        CHECK(u > 0.0);
        CHECK(onsite_interaction_dimensional(wf, p) / u == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(harmonic_onsite_interaction(LatticeConfig{}, p) / u == doctest::Approx(1.0).epsilon(1e-2));
    }

    TEST_CASE("hold time and its scaling with the lattice depth") {
        const auto p = default_params();
        const double u = harmonic_onsite_interaction(LatticeConfig{}, p);
        const double t = hold_time(u);
        CHECK(t * u / (kPi * 1.054571817e-34) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(t > 1e-3);
        CHECK(t < 4e-3);
        CHECK(hold_time(2 * u) / t == doctest::Approx(0.5));
        LatticeConfig deep;
        deep.V0 = 400.0;
        const double ratio = hold_time(harmonic_onsite_interaction(deep, p)) / t;
        CHECK(std::abs(ratio / std::pow(10.0, -0.75) - 1.0) < 1e-12);
        CHECK(std::abs(ratio - 0.178) / 0.178 < 1e-3);
        CHECK_THROWS_AS(hold_time(0.0), DomainError);
    }

    TEST_CASE("adiabatic time estimates") {
        const auto p = default_params();
        LatticeConfig cfg;
        const double t2 = adiabatic_time_step2(cfg, p);
        CHECK(t2 / p.tau_OL == doctest::Approx(4.0 * 2 * kPi / std::sqrt(40.0)));
        cfg.V0 = 160.0;
        CHECK(adiabatic_time_step2(cfg, p) / t2 == doctest::Approx(0.5));
        cfg.V0 = 40.0;
        CHECK(adiabatic_time_step3(6, cfg, p) / p.tau_OL == doctest::Approx(2.39).epsilon(2e-3));
        CHECK_THROWS_AS(adiabatic_time_step3(0, cfg, p), DomainError);
    }
}
