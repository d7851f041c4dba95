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

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "nffd/potential.hpp"
#include "nffd/wavefunction.hpp"

namespace nffd {

enum class Scheme {
    crank_nicolson_adi,   // reduced cylindrical grids
    split_step_spectral,  // periodic Cartesian grids
};

/// Quadratic imaginary potential -i strength (d / width)^2 inside a layer of the given
/// width along every non-axis face. Absorbing runs skip the norm-drift check.
struct AbsorbingLayer {
    double width = 0.0;
    double strength = 0.0;
};

struct PropagatorConfig {
    double dt = 0.05;        // scaled time step; shortened so that T / dt is an integer
    double kinetic = 0.0;    // c in  i d/dt psi = (-c lap + V) psi
    Scheme scheme = Scheme::crank_nicolson_adi;
    std::optional<AbsorbingLayer> absorbing;
    std::size_t sample_every = 100;  // trace cadence in steps; the last step is always sampled
    double max_phase_per_step = 1.0;  // accuracy bound on dt * (max V - min V)
    double norm_tolerance = 1e-6;     // allowed relative norm drift over a run

    /// Throws ConfigError for non-positive dt or kinetic, or an unsupported grid.
    void validate(const Grid& grid) const;
};

struct TraceSample {
    double t = 0.0;
    double norm = 0.0;
    std::complex<double> overlap;  // <psi(t)|reference>, zero without a reference
};

struct PropagationResult {
    Wavefunction psi;
    std::vector<TraceSample> trace;
    double norm_drift = 0.0;  // largest relative deviation of the norm from its start value
    std::size_t steps = 0;
    double dt = 0.0;          // step actually used
};

/// Strang-split Crank-Nicolson ADI on a reduced-cylindrical grid.
PropagationResult propagate_cylindrical(const Wavefunction& phi, const PotentialField& potential,
                                        const PropagatorConfig& cfg, double T,
                                        const Wavefunction* reference = nullptr);

/// Strang split-step with the kinetic term applied in Fourier space; every axis is
/// treated as periodic.
PropagationResult propagate_cartesian(const Wavefunction& psi, const PotentialField& potential,
                                      const PropagatorConfig& cfg, double T,
                                      const Wavefunction* reference = nullptr);

/// Dispatches on cfg.scheme.
PropagationResult propagate(const Wavefunction& psi, const PotentialField& potential,
                            const PropagatorConfig& cfg, double T,
                            const Wavefunction* reference = nullptr);

struct GroundStateSettings {
    double tolerance = 1e-10;       // energy change per step
    double residual_tolerance = 1e-8;  // |H psi - E psi| for normalized psi
    std::size_t max_steps = 20000;
    /// Initial imaginary time step for split-step runs; reduced by 4 per stage down
    /// to 16 dt.
    double initial_dtau = 0.0;      // 0 picks 256 * dt
};

struct GroundState {
    Wavefunction psi;
    double energy = 0.0;
    std::size_t steps = 0;
};

/// Imaginary-time relaxation to the lowest eigenstate of -c lap + V(0). On
/// reduced-cylindrical grids the steps are unsplit backward Euler with an unbounded
/// step (shift-invert iteration on the discrete Hamiltonian); on Cartesian grids the
/// split-step propagator runs in imaginary time and a LOBPCG iteration on the discrete
/// Hamiltonian finishes the job. Both stop once the energy change per step and the
/// residual are below tolerance. The result is normalized and phase-fixed real and
/// non-negative.
GroundState ground_state(const PotentialField& potential, Scaling scaling,
                         const PropagatorConfig& cfg, const GroundStateSettings& settings = {},
                         const Wavefunction* guess = nullptr);

/// <psi|H|psi> / <psi|psi> for the discrete Hamiltonian the propagators use.
double energy(const Wavefunction& psi, std::span<const double> potential, double kinetic);

}  // namespace nffd
