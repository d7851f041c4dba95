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

#include "nffd/grid.hpp"
#include "nffd/units.hpp"
#include "nffd/wavefunction.hpp"

namespace nffd {

// Lattice quantities are dimensionless in the lattice scaling: lengths in lambda_OL,
// energies in E_r, times in tau_OL, unless a function says otherwise.

struct LatticeConfig {
    double V0 = 40.0;           // well depth
    double waist = 4.0;         // Gaussian beam waist w
    double wave_factor = 1.0;   // cos^2(wave_factor * k_OL x); 1 gives lattice constant 1/2
    double z_center = 0.0;      // axial centre of the envelope (the NFFD hand-off point)

    static LatticeConfig from_params(const PhysicalParams& p);

    double k() const;                 // wave_factor * 2 pi
    double lattice_constant() const;  // pi / k
    /// Waists below 4 lambda_OL are accepted but outside the intended regime.
    bool waist_in_regime() const { return waist >= 4.0; }
    /// Throws ConfigError for V0 <= 0, waist <= 0 or wave_factor <= 0.
    void validate() const;
};

/// Gaussian envelope exp(-2 (y^2 + (z - z_center)^2) / w^2).
double lattice_envelope(double y, double z, const LatticeConfig& cfg);

/// -V0 cos^2(k x) times the envelope.
double lattice_potential(const Vec3& p, const LatticeConfig& cfg);

enum class QubitState { zero, one };
enum class WeightConvention {
    hyperfine,  // |0> = 1/4 V+ + 3/4 V-,  |1> = 3/4 V+ + 1/4 V-
    mandel,     // |0> = 3/4 V+ + 1/4 V-,  |1> = V-
};

/// Weights of the two circular components V+ = -V0 cos^2(kx - theta) and
/// V- = -V0 cos^2(kx + theta) felt by one qubit state.
struct QubitBasisWeights {
    QubitState state = QubitState::one;
    WeightConvention convention = WeightConvention::hyperfine;
    double c_plus = 0.75;
    double c_minus = 0.25;

    static QubitBasisWeights of(QubitState state,
                                WeightConvention convention = WeightConvention::hyperfine);
    bool valid() const;
    /// +1 if the potential minima move towards +x as theta grows, -1 otherwise, 0 if static.
    int direction() const;
};

/// Axial factor c+ cos^2(kx - theta) + c- cos^2(kx + theta), in [0, 1].
double state_dependent_profile(double x, double theta, const QubitBasisWeights& weights,
                               const LatticeConfig& cfg);

/// -V0 * profile * envelope.
double state_dependent_potential(const Vec3& p, double theta, const QubitBasisWeights& weights,
                                 const LatticeConfig& cfg);

enum class ScheduleKind { aperture_ramp, crossfade, polarization_angle };

/// start + (end - start) sin^2(pi t / 2T) on [0, T]: exact endpoints, zero end slopes.
class ScalarSchedule {
public:
    ScalarSchedule(ScheduleKind kind, double duration, double start, double end);

    ScheduleKind kind() const { return kind_; }
    double duration() const { return duration_; }
    double start() const { return start_; }
    double end() const { return end_; }

    double value(double t) const;
    double derivative(double t) const;
    /// The same curve traversed backwards in time.
    ScalarSchedule reversed() const { return {kind_, duration_, end_, start_}; }

private:
    double check(double t) const;

    ScheduleKind kind_;
    double duration_;
    double start_;
    double end_;
};

/// n pi sin^2(pi t / 2 tau3).
double theta_schedule(double t, int n, double tau3);

/// theta mod pi, in [0, pi).
double eom_wrap(double theta);

struct CrossfadeWeights {
    double w_F;   // cos^2(pi t / 2 tau2)
    double w_OL;  // sin^2(pi t / 2 tau2)
};
CrossfadeWeights crossfade_weights(double t, double tau2);

/// a_ini + (a_fin - a_ini) sin^2(pi t / 2 tau1).
double aperture_schedule(double t, double a_ini, double a_fin, double tau1);

/// \int |psi|^4 d^3x in the wavefunction's own length unit. Needs a 3-D geometry
/// (reduced cylindrical or cartesian3d).
double quartic_integral(const Wavefunction& psi);

/// (2 a_s E_r / pi lambda_OL) \int psi^4, in joules. psi must be a normalized,
/// real, non-negative state in the lattice scaling.
double onsite_interaction(const Wavefunction& psi0, const PhysicalParams& p);

/// (4 pi hbar^2 a_s / m) \int |psi|^4 with psi converted to SI, in joules.
double onsite_interaction_dimensional(const Wavefunction& psi0, const PhysicalParams& p);

/// pi hbar / U_int, in seconds.
double hold_time(double U_int);

/// Harmonic approximation of one lattice well. Widths are amplitude widths, psi ~
/// exp(-q^2 / 2 s^2).
struct HarmonicWell {
    double omega_x = 0.0;    // 1/tau_OL
    double omega_rho = 0.0;  // 1/tau_OL
    double width_x = 0.0;    // lambda_OL
    double width_rho = 0.0;  // lambda_OL

    /// 1 / ((2 pi)^{3/2} s_x s_rho^2).
    double quartic_integral() const;
    /// (omega_x + 2 omega_rho) / 2 above the well bottom.
    double zero_point_energy() const;
};

HarmonicWell harmonic_well(const LatticeConfig& cfg);

/// U_int of the harmonic-approximation ground state, in joules.
double harmonic_onsite_interaction(const LatticeConfig& cfg, const PhysicalParams& p);

/// w k_OL sqrt(E_r / V0) tau_OL, in seconds.
double adiabatic_time_step2(const LatticeConfig& cfg, const PhysicalParams& p);

/// n (E_r / V0)^{1/4} tau_OL, in seconds.
double adiabatic_time_step3(int n, const LatticeConfig& cfg, const PhysicalParams& p);

}  // namespace nffd
