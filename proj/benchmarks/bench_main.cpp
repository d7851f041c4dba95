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

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "nffd/fresnel.hpp"
#include "nffd/lattice.hpp"
#include "nffd/propagator.hpp"

using namespace nffd;

namespace {

std::vector<double> harmonic(const Grid& g) {
    std::vector<double> v(g.size());
    const auto& ax = g.axes();
    std::vector<std::size_t> idx(ax.size(), 0);
    for (std::size_t n = 0; n < v.size(); ++n) {
        double s = 0.0;
        for (std::size_t d = 0; d < ax.size(); ++d) s += ax[d].node(idx[d]) * ax[d].node(idx[d]);
        v[n] = 100.0 * s;
        for (std::size_t d = ax.size(); d-- > 0;) {
            if (++idx[d] < ax[d].size) break;
            idx[d] = 0;
        }
    }
    return v;
}

Wavefunction gaussian(const Grid& g) {
    auto psi = Wavefunction::from_psi(g, Scaling::lattice, [](std::span<const double> q) {
        double s = 0.0;
        for (double x : q) s += x * x;
        return std::complex<double>(std::exp(-s / (2 * 0.1 * 0.1)));
    });
    psi.normalize();
    return psi;
}

void BM_RsField(benchmark::State& state) {
    const ApertureConfig ap{2.8};
    double z = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rs_field({0.1, 0.0, z}, ap));
        z += 1e-6;
    }
}
BENCHMARK(BM_RsField);

void BM_TrapMinimum(benchmark::State& state) {
    const auto p = default_params();
    for (auto _ : state) benchmark::DoNotOptimize(find_trap_minimum({2.2}, p));
}
BENCHMARK(BM_TrapMinimum)->Unit(benchmark::kMillisecond);

void BM_CylindricalStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid g = Grid::reduced_cylindrical(0.5, n, Axis::spanning(-0.5, 0.5, 2 * n + 1));
    const StaticPotential v(g, harmonic(g));
    PropagatorConfig cfg;
    cfg.kinetic = 0.01;
    cfg.dt = 1e-3;
    cfg.sample_every = 1000000;
    const auto psi = gaussian(g);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(psi, v, cfg, 10 * cfg.dt));
    state.SetItemsProcessed(state.iterations() * 10 * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_CylindricalStep)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SpectralStep(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto ax = Axis::periodic(-0.5, 0.5, n);
    const Grid g = Grid::cartesian3d(ax, ax, ax);
    const StaticPotential v(g, harmonic(g));
    PropagatorConfig cfg;
    cfg.kinetic = 0.01;
    cfg.dt = 1e-3;
    cfg.scheme = Scheme::split_step_spectral;
    cfg.sample_every = 1000000;
    const auto psi = gaussian(g);
    for (auto _ : state) benchmark::DoNotOptimize(propagate(psi, v, cfg, 10 * cfg.dt));
    state.SetItemsProcessed(state.iterations() * 10 * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_SpectralStep)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_StateDependentPotential(benchmark::State& state) {
    const auto p = default_params();
    const auto cfg = LatticeConfig::from_params(p);
    const auto w = QubitBasisWeights::of(QubitState::one);
    double th = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(state_dependent_potential({0.1, 0.2, 0.0}, th, w, cfg));
        th += 1e-4;
    }
}
BENCHMARK(BM_StateDependentPotential);

}  // namespace

BENCHMARK_MAIN();
