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

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "nffd/errors.hpp"
#include "nffd/propagator.hpp"

using namespace nffd;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// H = -c lap + kappa q^2 has omega = sqrt(4 c kappa) = 2 and amplitude width (c / kappa)^{1/4}.
constexpr double kC = 0.01;
constexpr double kKappa = 100.0;

std::vector<double> sample(const Grid& g, const std::function<double(std::span<const double>)>& f) {
    std::vector<double> v(g.size());
    const auto& ax = g.axes();
    std::vector<double> q(ax.size());
    std::vector<std::size_t> idx(ax.size(), 0);
    for (std::size_t n = 0; n < v.size(); ++n) {
        for (std::size_t d = 0; d < ax.size(); ++d) q[d] = ax[d].node(idx[d]);
        v[n] = f(q);
        for (std::size_t d = ax.size(); d-- > 0;) {
            if (++idx[d] < ax[d].size) break;
            idx[d] = 0;
        }
    }
    return v;
}

double square(std::span<const double> q) {
    double s = 0.0;
    for (double x : q) s += x * x;
    return s;
}

PropagatorConfig cylindrical_cfg(double dt) {
    PropagatorConfig c;
    c.dt = dt;
    c.kinetic = kC;
    c.scheme = Scheme::crank_nicolson_adi;
    return c;
}

PropagatorConfig spectral_cfg(double dt) {
    PropagatorConfig c;
    c.dt = dt;
    c.kinetic = kC;
    c.scheme = Scheme::split_step_spectral;
    return c;
}

Wavefunction gaussian(const Grid& g, Scaling s, double width, double shift = 0.0) {
    auto wf = Wavefunction::from_psi(g, s, [&](std::span<const double> q) {
        double r2 = 0.0;
        for (std::size_t d = 0; d < q.size(); ++d) {
            const double x = d + 1 == q.size() ? q[d] - shift : q[d];
            r2 += x * x;
        }
        return cd(std::exp(-r2 / (2 * width * width)), 0.0);
    });
    wf.normalize();
    return wf;
}

// Lowest q = 0 eigenvalue of -c d^2/dx^2 - V0 cos^2(k x) in a plane-wave basis.
double mathieu_ground(double c, double V0, double k, int modes = 40) {
    const int n = 2 * modes + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double g = 2.0 * k * (i - modes);
        h(i, i) = c * g * g - 0.5 * V0;
        if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = -0.25 * V0;
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues()(0);
}

}  // namespace

TEST_SUITE("tdse") {
    TEST_CASE("cylindrical harmonic ground state energy") {
        const auto g = Grid::reduced_cylindrical(0.5, 256, Axis::spanning(-0.5, 0.5, 512));
        const StaticPotential v(g, sample(g, [](auto q) { return kKappa * square(q); }));
        const auto gs = ground_state(v, Scaling::nffd, cylindrical_cfg(0.01));
        CHECK(std::abs(gs.energy / 3.0 - 1.0) < 1e-4);
        CHECK(std::abs(gs.psi.expectation(1)) < 1e-8);
        CHECK(gs.psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (auto x : gs.psi.values()) CHECK(x.real() >= 0.0);
    }

    TEST_CASE("Cartesian harmonic ground state energy is spectrally exact") {
        const auto ax = Axis::periodic(-1.2, 1.2, 96);
        const auto g = Grid::cartesian2d(ax, ax);
        const StaticPotential v(g, sample(g, [](auto q) { return kKappa * square(q); }));
        const auto gs = ground_state(v, Scaling::lattice, spectral_cfg(0.01));
        CHECK(std::abs(gs.energy - 2.0) < 1e-8);
        const auto ref = gaussian(g, Scaling::lattice, std::pow(kC / kKappa, 0.25));
        CHECK(fidelity(gs.psi, ref).magnitude == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(gs.psi.expectation(0)) < 1e-8);
        CHECK(energy(gs.psi, v.values(), kC) == doctest::Approx(gs.energy).epsilon(1e-12));
    }

    TEST_CASE("lattice Bloch ground state matches the plane-wave Mathieu oracle") {
        const double c = 1.0 / (4 * kPi * kPi), V0 = 40.0, k = 2 * kPi;
        const auto ax = Axis::periodic(-0.5, 0.5, 64);
        const auto g = Grid::cartesian2d(ax, ax);
        const auto pot = sample(g, [&](auto q) {
            return -V0 * (std::pow(std::cos(k * q[0]), 2) + std::pow(std::cos(k * q[1]), 2));
        });
        const StaticPotential v(g, pot);
        auto cfg = spectral_cfg(1e-3);
        cfg.kinetic = c;
        const auto gs = ground_state(v, Scaling::lattice, cfg);
        const double e1 = mathieu_ground(c, V0, k);
        CHECK(gs.energy == doctest::Approx(2 * e1).epsilon(1e-9));
        // One well: below the harmonic estimate, within 5 %.
        const double harmonic = -V0 + std::sqrt(V0);
        CHECK(e1 < harmonic);
        CHECK((harmonic - e1) / std::sqrt(V0) < 0.05);

        const auto run = propagate(gs.psi, v, cfg, 1.0, &gs.psi);
        CHECK(run.trace.back().norm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(run.trace.back().overlap) > 1.0 - 1e-6);
    }

    TEST_CASE("stationary state and per-step norm conservation") {
        const auto g = Grid::reduced_cylindrical(0.6, 48, Axis::spanning(-0.6, 0.6, 97));
        const StaticPotential v(g, sample(g, [](auto q) { return kKappa * square(q); }));
        const auto gs = ground_state(v, Scaling::nffd, cylindrical_cfg(0.01));
        auto cfg = cylindrical_cfg(0.01);
        cfg.sample_every = 1;
        const double period = kPi;
        const auto run = propagate(gs.psi, v, cfg, 10 * period, &gs.psi);
        CHECK(std::abs(run.trace.back().overlap) > 1.0 - 1e-6);
        double worst = 0.0;
        for (std::size_t i = 1; i < run.trace.size(); ++i)
            worst = std::max(worst, std::abs(run.trace[i].norm - run.trace[i - 1].norm));
        CHECK(worst < 1e-9);
        CHECK(run.norm_drift < 1e-6);
    }

    TEST_CASE("time-dependent norm conservation and forward/reverse symmetry") {
        const auto g = Grid::reduced_cylindrical(0.6, 40, Axis::spanning(-0.6, 0.9, 121));
        const double T = 3.0;
        const SampledPotential v(g, T, [&](double t, std::span<const double> q) {
            const double z0 = 0.3 * std::pow(std::sin(kPi * t / (2 * T)), 2);
            const double dz = q[1] - z0;
            return kKappa * (q[0] * q[0] + dz * dz) + 5.0 * dz * dz * dz;
        });
        const auto cfg = cylindrical_cfg(5e-3);
        const auto start = ground_state(StaticPotential(g, v.evaluate(0.0)), Scaling::nffd, cfg);
        const auto end = ground_state(StaticPotential(g, v.evaluate(T)), Scaling::nffd, cfg);
        const auto fwd = propagate(start.psi, v, cfg, T, &end.psi);
        const ReversedPotential rv(v);
        const auto rev = propagate(end.psi, rv, cfg, T, &start.psi);
        CHECK(fwd.norm_drift < 1e-9 * fwd.steps);
        CHECK(std::abs(fwd.trace.back().overlap) < 1.0);
        CHECK(std::abs(std::abs(fwd.trace.back().overlap) - std::abs(rev.trace.back().overlap)) < 1e-6);
    }

    TEST_CASE("free Gaussian spreads per the analytic dispersion") {
        // <z^2> = s(t)^2 / 2 with s(t)^2 = s^2 (1 + (2 c t / s^2)^2).
        const double s = 0.15, T = 1.0;
        const auto g = Grid::reduced_cylindrical(1.0, 400, Axis::spanning(-1.0, 1.0, 801));
        const StaticPotential v(g, std::vector<double>(g.size(), 0.0));
        const auto psi0 = gaussian(g, Scaling::nffd, s);
        const auto run = propagate(psi0, v, cylindrical_cfg(2e-3), T);
        const auto& w = g.weights();
        double z2 = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double z = g.axis(1).node(i % 801);
            z2 += w[i] * std::norm(run.psi[i]) * z * z;
        }
        const double st2 = s * s * (1 + std::pow(2 * kC * T / (s * s), 2));
        CHECK(std::abs(z2 / (0.5 * st2) - 1.0) < 1e-4);
    }

    TEST_CASE("momentum kick displaces the packet by 2 c kappa T") {
        const auto ax = Axis::periodic(-1.0, 1.0, 128);
        const auto g = Grid::cartesian2d(ax, ax);
        const double kick = 2 * kPi * 3.0, T = 0.5;
        auto psi = gaussian(g, Scaling::lattice, 0.1);
        for (std::size_t i = 0; i < g.size(); ++i)
            psi[i] *= std::polar(1.0, kick * ax.node(i / 128));
        const StaticPotential v(g, std::vector<double>(g.size(), 0.0));
        const auto run = propagate(psi, v, spectral_cfg(0.01), T);
        CHECK(run.psi.expectation(0) == doctest::Approx(2 * kC * kick * T).epsilon(1e-4));
        CHECK(std::abs(run.psi.expectation(1)) < 1e-10);
    }

    TEST_CASE("reduced radial operator is r times the cylindrical Laplacian") {
        // phi'' - phi'/r + phi/r^2 with phi = r psi, compared with r (psi'' + psi'/r).
        auto psi = [](double r) { return std::exp(-1.3 * r * r) * (1 + r * r); };
        auto phi = [&](double r) { return r * psi(r); };
        const double h = 1e-3;
        auto d1 = [&](auto f, double r) {
            return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
        };
        auto d2 = [&](auto f, double r) {
            return (-f(r + 2 * h) + 16 * f(r + h) - 30 * f(r) + 16 * f(r - h) - f(r - 2 * h)) / (12 * h * h);
        };
        for (double r : {0.05, 0.3, 0.8, 1.5}) {
            const double lhs = d2(phi, r) - d1(phi, r) / r + phi(r) / (r * r);
            const double rhs = r * (d2(psi, r) + d1(psi, r) / r);
            CHECK(std::abs(lhs - rhs) < 1e-8);
        }
    }

    TEST_CASE("discrete kinetic energy converges at second order") {
        // <-lap> = 3 / (2 s^2) for a normalized 3-D Gaussian of amplitude width s.
        const double s = 0.2;
        double prev = 0.0;
        for (int level = 0; level < 3; ++level) {
            const std::size_t nr = 20u << level;
            const auto g = Grid::reduced_cylindrical(1.2, nr, Axis::spanning(-1.2, 1.2, 2 * nr + 1));
            const auto psi = gaussian(g, Scaling::nffd, s);
            const double err = std::abs(energy(psi, std::vector<double>(g.size(), 0.0), 1.0) - 1.5 / (s * s));
            if (level > 0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
            prev = err;
        }
    }

    TEST_CASE("configuration and contract errors") {
        const auto g = Grid::reduced_cylindrical(0.6, 16, Axis::spanning(-0.6, 0.6, 33));
        const StaticPotential v(g, sample(g, [](auto q) { return kKappa * square(q); }));
        const auto psi = gaussian(g, Scaling::nffd, 0.2);
        auto cfg = cylindrical_cfg(0.01);
        cfg.dt = 0.0;
        CHECK_THROWS_AS(propagate(psi, v, cfg, 1.0), ConfigError);
        cfg = cylindrical_cfg(0.01);
        cfg.kinetic = 0.0;
        CHECK_THROWS_AS(propagate(psi, v, cfg, 1.0), ConfigError);
        CHECK_THROWS_AS(propagate(psi, v, spectral_cfg(0.01), 1.0), ConfigError);
        cfg = cylindrical_cfg(10.0);
        CHECK_THROWS_AS(propagate(psi, v, cfg, 20.0), ConfigError);
        CHECK_THROWS_AS(propagate(psi, v, cylindrical_cfg(0.01), -1.0), DomainError);
        const auto other = Grid::reduced_cylindrical(0.6, 17, Axis::spanning(-0.6, 0.6, 33));
        CHECK_THROWS_AS(propagate(gaussian(other, Scaling::nffd, 0.2), v, cylindrical_cfg(0.01), 1.0),
                        ContractError);
        cfg = cylindrical_cfg(0.01);
        cfg.norm_tolerance = 0.0;
        CHECK_THROWS_AS(propagate(psi, v, cfg, 1.0), IntegrityError);
        GroundStateSettings tight;
        tight.max_steps = 1;
        CHECK_THROWS_AS(ground_state(v, Scaling::nffd, cylindrical_cfg(0.01), tight), ConvergenceError);
    }

    TEST_CASE("zero duration returns the input") {
        const auto g = Grid::reduced_cylindrical(0.6, 16, Axis::spanning(-0.6, 0.6, 33));
        const StaticPotential v(g, std::vector<double>(g.size(), 0.0));
        const auto psi = gaussian(g, Scaling::nffd, 0.2);
        const auto run = propagate(psi, v, cylindrical_cfg(0.01), 0.0, &psi);
        CHECK(run.steps == 0);
        CHECK(run.trace.size() == 1);
        CHECK(std::abs(run.trace[0].overlap - 1.0) < 1e-14);
    }
}
