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

#include <numbers>

namespace nffd {

// Exact SI values (2019 redefinition) plus the 87Rb atomic mass.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double planck = 6.62607015e-34;     // J s
inline constexpr double boltzmann = 1.380649e-23;    // J/K
inline constexpr double speed_of_light = 299792458;  // m/s
inline constexpr double rb87_mass = 1.44316060e-25;  // kg
}  // namespace constants

/// Independent inputs from which every derived scale is computed.
struct ParamInputs {
    double lambda_F = 795.118e-9;   // m, trap laser
    double lambda_0 = 794.979e-9;   // m, D1 line
    double U0_kelvin = 20.1e-6;     // trap depth expressed as U0 / k_B
    double lambda_OL = 785e-9;      // m, lattice laser
    double V0_over_Er = 40.0;
    double w_over_lambdaOL = 4.0;
    double a_s = 5.19e-9;           // m
    double mass = constants::rb87_mass;
    double Gamma_e = 0.5 / 27.679e-9;  // 1/s, half the D1 spontaneous decay rate
    double I0 = 1e5;                // W/cm^2, informational
};

/// Dimensional constants and the derived NFFD and lattice scales.
struct PhysicalParams {
    double lambda_F;         // m
    double lambda_0;         // m
    double U0;               // J
    double tau_F;            // s, hbar / U0
    double alpha;            // hbar^2 / (2 m lambda_F^2 U0)
    double lambda_OL;        // m
    double E_r;              // J, hbar^2 k_OL^2 / 2m
    double tau_OL;           // s, hbar / E_r
    double V0_over_Er;
    double U0_over_Er;
    double w_over_lambdaOL;
    double a_s;              // m
    double mass;             // kg
    double Gamma_e;          // 1/s
    double I0;               // W/cm^2
};

PhysicalParams make_params(const ParamInputs& in);
PhysicalParams default_params();

/// Largest relative violation of the defining relations (tau_F, tau_OL, alpha, E_r).
double consistency_error(const PhysicalParams& p);

/// 2 pi c (1/lambda_laser - 1/lambda_transition) in rad/s; negative is red detuning.
double detuning(double lambda_laser, double lambda_transition);

/// hbar |Omega|^2 / (4 Delta).
double ac_stark_shift(double rabi, double detuning);

/// Rabi frequency whose light shift equals the trap depth U0 at the given detuning.
double trap_rabi_frequency(const PhysicalParams& p, double detuning);

/// Recoil-heating lifetime U0 / (2 E_F gamma_s), gamma_s = Gamma_e Omega^2 / (4 Delta^2).
double heating_lifetime(const PhysicalParams& p, double rabi, double detuning);

/// Length, energy and time units of a dimensionless formulation.
struct Scale {
    double length;
    double energy;
    double time;
};

Scale nffd_scale(const PhysicalParams& p);
Scale lattice_scale(const PhysicalParams& p);

enum class Dimension { length, energy, time, rate };

double to_si(double value, Dimension d, const Scale& s);
double from_si(double value, Dimension d, const Scale& s);
double convert(double value, Dimension d, const Scale& from, const Scale& to);

/// Kinetic prefactor c in  i d/dt psi = (-c lap + V) psi  for a scale with the given mass.
double kinetic_coefficient(const PhysicalParams& p, const Scale& s);

}  // namespace nffd
