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

#include "nffd/units.hpp"

#include <algorithm>
#include <cmath>

#include "nffd/errors.hpp"

namespace nffd {

using constants::hbar;

PhysicalParams make_params(const ParamInputs& in) {
    if (in.lambda_F <= 0 || in.lambda_OL <= 0 || in.U0_kelvin <= 0 || in.mass <= 0)
        throw DomainError("physical inputs must be positive");
    PhysicalParams p{};
    p.lambda_F = in.lambda_F;
    p.lambda_0 = in.lambda_0;
    p.U0 = constants::boltzmann * in.U0_kelvin;
    p.tau_F = hbar / p.U0;
    p.alpha = hbar * hbar / (2.0 * in.mass * in.lambda_F * in.lambda_F * p.U0);
    p.lambda_OL = in.lambda_OL;
    const double k_ol = 2.0 * std::numbers::pi / in.lambda_OL;
    p.E_r = hbar * hbar * k_ol * k_ol / (2.0 * in.mass);
    p.tau_OL = hbar / p.E_r;
    p.V0_over_Er = in.V0_over_Er;
    p.U0_over_Er = p.U0 / p.E_r;
    p.w_over_lambdaOL = in.w_over_lambdaOL;
    p.a_s = in.a_s;
    p.mass = in.mass;
    p.Gamma_e = in.Gamma_e;
    p.I0 = in.I0;
    return p;
}

PhysicalParams default_params() { return make_params(ParamInputs{}); }

double consistency_error(const PhysicalParams& p) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    const double k = 2.0 * std::numbers::pi / p.lambda_OL;
    return std::max({rel(p.tau_F, hbar / p.U0), rel(p.tau_OL, hbar / p.E_r),
                     rel(p.alpha, hbar * hbar / (2.0 * p.mass * p.lambda_F * p.lambda_F * p.U0)),
                     rel(p.E_r, hbar * hbar * k * k / (2.0 * p.mass))});
}

double detuning(double lambda_laser, double lambda_transition) {
    if (!(lambda_laser > 0) || !(lambda_transition > 0))
        throw DomainError("detuning: wavelengths must be positive");
    return 2.0 * std::numbers::pi * constants::speed_of_light *
           (1.0 / lambda_laser - 1.0 / lambda_transition);
}

double ac_stark_shift(double rabi, double detuning) {
    if (detuning == 0.0) throw DomainError("ac_stark_shift: zero detuning");
    return hbar * rabi * rabi / (4.0 * detuning);
}

double trap_rabi_frequency(const PhysicalParams& p, double detuning) {
    if (detuning == 0.0) throw DomainError("trap_rabi_frequency: zero detuning");
    return std::sqrt(4.0 * std::abs(detuning) * p.U0 / hbar);
}

double heating_lifetime(const PhysicalParams& p, double rabi, double detuning) {
    if (detuning == 0.0) throw DomainError("heating_lifetime: zero detuning");
    const double E_F = constants::planck * constants::planck /
                       (2.0 * p.mass * p.lambda_F * p.lambda_F);
    const double gamma_s = p.Gamma_e * rabi * rabi / (4.0 * detuning * detuning);
    return p.U0 / (2.0 * E_F * gamma_s);
}

Scale nffd_scale(const PhysicalParams& p) { return {p.lambda_F, p.U0, p.tau_F}; }
Scale lattice_scale(const PhysicalParams& p) { return {p.lambda_OL, p.E_r, p.tau_OL}; }

namespace {
double unit_of(Dimension d, const Scale& s) {
    switch (d) {
        case Dimension::length: return s.length;
        case Dimension::energy: return s.energy;
        case Dimension::time: return s.time;
        case Dimension::rate: return 1.0 / s.time;
    }
    return 1.0;
}
}  // namespace

double to_si(double value, Dimension d, const Scale& s) { return value * unit_of(d, s); }
double from_si(double value, Dimension d, const Scale& s) { return value / unit_of(d, s); }
double convert(double value, Dimension d, const Scale& from, const Scale& to) {
    return from_si(to_si(value, d, from), d, to);
}

double kinetic_coefficient(const PhysicalParams& p, const Scale& s) {
    // hbar^2 / (2 m L^2 E) with time measured in hbar / E.
    return hbar * hbar / (2.0 * p.mass * s.length * s.length * s.energy);
}

}  // namespace nffd
