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
#include "nffd/pipeline.hpp"

using namespace nffd;

namespace {

constexpr double kPi = std::numbers::pi;

Step1Config coarse_step1() {
    Step1Config c;
    c.nr = 16;
    c.nz = 129;
    c.apertures = 8;
    c.dt = 0.1;
    return c;
}

Step2Config coarse_step2() {
    Step2Config c;
    c.geometry = Step2Geometry::slice_yz;
    c.y_half = 1.6;
    c.ny = 48;
    c.z_half = 1.6;
    c.nz = 48;
    c.dt = 2e-3;
    return c;
}

Step3Config coarse_step3(QubitState s = QubitState::one) {
    Step3Config c;
    c.n = 1;
    c.state = s;
    c.nrho = 16;
    c.points_per_cell = 48;
    c.dt = 4e-3;
    return c;
}

StepReport fake(StepId id, double f, double seconds) {
    StepReport r;
    r.id = id;
    r.final_fidelity = f;
    r.duration_s = seconds;
    return r;
}

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("step identifiers") {
        for (auto id : {StepId::step1, StepId::step2, StepId::step3, StepId::step4, StepId::step3_reverse,
                        StepId::step2_reverse, StepId::step1_reverse})
            CHECK(step_id_from_string(to_string(id)) == id);
        CHECK(to_string(StepId::step2_reverse) == "2'");
        CHECK(forward_of(StepId::step1_reverse) == StepId::step1);
        CHECK(is_reverse(StepId::step3_reverse));
        CHECK_FALSE(is_reverse(StepId::step4));
        CHECK_THROWS_AS(step_id_from_string("5"), ConfigError);
        CHECK(step2_geometry_from_string(to_string(Step2Geometry::slice_xz)) == Step2Geometry::slice_xz);
    }

    TEST_CASE("configuration validation") {
        auto c1 = coarse_step1();
        c1.a_ini = 0.5;
        CHECK_THROWS_AS(Step1Simulation(default_params(), c1), ConfigError);
        c1 = coarse_step1();
        c1.z_hi = 5.0;
        CHECK_THROWS_AS(Step1Simulation(default_params(), c1), GeometryError);
        CHECK(coarse_step1().refined().nz == 257);
        CHECK(coarse_step1().refined().dt == 0.05);

        auto c2 = coarse_step2();
        c2.lattice_z_center = 0.0;
        CHECK_THROWS_AS(Step2Simulation(default_params(), c2), ConfigError);
        c2 = coarse_step2();
        c2.nx = 0;
        CHECK_THROWS_AS(c2.validate(), ConfigError);

        auto c3 = coarse_step3();
        c3.n = 0;
        CHECK_THROWS_AS(c3.validate(), ConfigError);
        c3 = coarse_step3();
        c3.points_per_cell = 4;
        CHECK_THROWS_AS(c3.validate(), ConfigError);
    }

    TEST_CASE("step 1 on a coarse grid") {
        const Step1Simulation sim(default_params(), coarse_step1());
        CHECK(sim.initial_trap().z_m == doctest::Approx(2.2047).epsilon(1e-4));
        CHECK(sim.final_trap().z_m == doctest::Approx(7.793).epsilon(1e-4));
        CHECK(sim.initial_state().expectation(1) == doctest::Approx(sim.initial_trap().z_m).epsilon(0.02));
        CHECK(sim.final_state().expectation(1) == doctest::Approx(sim.final_trap().z_m).epsilon(0.02));
        CHECK(sim.initial_state().boundary_fraction() < 1e-6);

        const auto still = sim.run(0.0);
        CHECK(still.steps == 0);
        CHECK(still.final_fidelity < 1e-3);

        const double tau = 40.0;
        const auto fwd = sim.run(tau);
        const auto rev = sim.run_reverse(tau);
        CHECK(fwd.id == StepId::step1);
        CHECK(rev.id == StepId::step1_reverse);
        CHECK(fwd.scaling == Scaling::nffd);
        CHECK(fwd.duration_s == doctest::Approx(tau * default_params().tau_F / 1.0).scale(0.0).epsilon(1e-12));
        CHECK(fwd.norm_drift < 1e-6);
        CHECK(fwd.trace.front().t == 0.0);
        CHECK(fwd.trace.back().t == doctest::Approx(tau));
        CHECK(std::abs(fwd.final_fidelity - rev.final_fidelity) < 1e-6);
    }

    TEST_CASE("step 2 on a coarse slice") {
        const Step2Simulation sim(default_params(), coarse_step2());
        CHECK(sim.trap_minimum() ==
              doctest::Approx(7.793 * default_params().lambda_F / default_params().lambda_OL).epsilon(1e-4));
        const auto still = sim.run(0.0);
        CHECK(std::abs(still.overlap.imag()) < 1e-4);
        CHECK(still.final_fidelity > 0.3);
        CHECK(still.final_fidelity < 1.0);

        const auto fwd = sim.run(4.0);
        const auto rev = sim.run_reverse(4.0);
        CHECK(fwd.final_fidelity > still.final_fidelity);
        CHECK(std::abs(fwd.final_fidelity - rev.final_fidelity) < 1e-6);
        CHECK(fwd.norm_drift < 1e-9);
        CHECK(fwd.duration_s / default_params().tau_OL == doctest::Approx(4.0));
    }

    TEST_CASE("step 3 moves each state one site in its own direction") {
        const auto p = default_params();
        const Step3Simulation one(p, coarse_step3(QubitState::one));
        const Step3Simulation zero(p, coarse_step3(QubitState::zero));
        CHECK(one.destination() == doctest::Approx(0.5 * one.weights().direction()));
        CHECK(zero.destination() == -one.destination());

        const double tau = 12.0;
        for (const auto* sim : {&one, &zero}) {
            const auto r = sim->run(tau);
            REQUIRE(r.centroid);
            CHECK(*r.centroid == doctest::Approx(sim->destination()).epsilon(0.02));
            CHECK(*r.target_centroid == sim->destination());
            CHECK(r.final_fidelity > 0.9);
            const auto back = sim->run_reverse(tau);
            CHECK(std::abs(*back.centroid) < 0.01);
            CHECK(std::abs(back.final_fidelity - r.final_fidelity) < 1e-6);
        }

        auto unwrapped = coarse_step3();
        unwrapped.wrap = false;
        const Step3Simulation raw(p, unwrapped);
        CHECK(raw.run(tau).final_fidelity == doctest::Approx(one.run(tau).final_fidelity).epsilon(1e-9));

        auto tight = coarse_step3();
        tight.rho_max = 0.4;
        tight.leakage_limit = 1e-12;
        CHECK_THROWS_AS(Step3Simulation(p, tight).run(tau), IntegrityError);
        CHECK_THROWS_AS(one.run(0.0), DomainError);
    }

    TEST_CASE("isolated well ground state needs the cylindrical grid") {
        const auto g = Grid::cartesian2d(Axis::periodic(0, 1, 8), Axis::periodic(0, 1, 8));
        CHECK_THROWS_AS(isolated_well_ground_state(g, LatticeConfig{}, 0.0, 1e-3), ContractError);
    }

    TEST_CASE("phase gate") {
        const TwoQubitPhaseGate g(kPi);
        CHECK(g.unitarity_error() < 1e-15);
        CHECK(g.diagonal());
        CHECK(g.phase_error() < 1e-15);
        CHECK((g.local_equivalent() - controlled_z()).norm() < 1e-15);
        const Eigen::Vector4cd s = Eigen::Vector4cd::Constant(0.5);
        const auto out = g.apply(s);
        CHECK(std::abs(out(1) + 0.5) < 1e-15);
        CHECK(std::abs(out(3) - 0.5) < 1e-15);
        CHECK((TwoQubitPhaseGate(0.0).matrix() - Eigen::Matrix4cd::Identity()).norm() == 0.0);
        CHECK(TwoQubitPhaseGate(3 * kPi).phase_error() < 1e-12);
        CHECK(TwoQubitPhaseGate(-kPi).phase_error() < 1e-12);
    }

    TEST_CASE("step 4 hold time and conditional phase") {
        const auto p = default_params();
        Step4Config c;
        c.nrho = 32;
        c.points_per_cell = 64;
        const auto r = run_step4(p, c);
        CHECK(r.t_hold_s > 1e-3);
        CHECK(r.t_hold_s < 4e-3);
        CHECK(r.chi == doctest::Approx(kPi));
        CHECK((r.gate.local_equivalent() - controlled_z()).norm() < 1e-12);
        const double harmonic = hold_time(harmonic_onsite_interaction(LatticeConfig::from_params(p), p));
        CHECK(r.t_hold_s / harmonic == doctest::Approx(1.0).epsilon(0.15));

        c.t_hold_s = 0.0;
        const auto idle = run_step4(p, c);
        CHECK((idle.gate.matrix() - Eigen::Matrix4cd::Identity()).norm() == 0.0);
        c.t_hold_s = -1.0;
        CHECK_THROWS_AS(run_step4(p, c), DomainError);
        c = {};
        c.nrho = 2;
        CHECK_THROWS_AS(run_step4(p, c), ConfigError);
    }

    TEST_CASE("gate report from durations") {
        const auto g = gate_report(0.95e-3, 0.56e-3, 1.28e-3, 2.29e-3);
        CHECK(g.T_overall_s / 7.87e-3 == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(g.overall_fidelity_model == std::pow(0.99, 12));
        CHECK(g.overall_fidelity_model == doctest::Approx(0.886).epsilon(1e-3));
        CHECK(g.processes == 12);
        CHECK(total_gate_time(1, 2, 3, 4) == 16.0);
        CHECK_THROWS_AS(gate_report(1, 1, 1, 1, 1.5), DomainError);
        CHECK_THROWS_AS(gate_report(-1, 1, 1, 1), DomainError);
    }

    TEST_CASE("gate report from simulated steps") {
        std::vector<StepReport> steps{fake(StepId::step1, 0.99, 1e-3),         fake(StepId::step2, 0.98, 0.5e-3),
                                      fake(StepId::step3, 0.97, 1.2e-3),       fake(StepId::step3_reverse, 0.97, 1.2e-3),
                                      fake(StepId::step2_reverse, 0.98, 0.5e-3), fake(StepId::step1_reverse, 0.99, 1e-3)};
        const auto g = gate_report(steps, 2e-3);
        CHECK(g.processes == 12);
        CHECK(g.overall_fidelity_model == doctest::Approx(std::pow(0.99 * 0.98 * 0.97, 4)));
        CHECK(g.T_overall_s == doctest::Approx(2 * (1e-3 + 0.5e-3 + 1.2e-3) + 2e-3).scale(0.0));
        CHECK(g.steps.size() == 6);

        auto missing = steps;
        missing.pop_back();
        CHECK_THROWS_AS(gate_report(missing, 2e-3), ContractError);
        auto repeated = steps;
        repeated.push_back(fake(StepId::step2, 0.9, 1e-3));
        CHECK_THROWS_AS(gate_report(repeated, 2e-3), ContractError);
        CHECK_THROWS_AS(gate_report(steps, 2e-3, 0), ContractError);
    }
}
