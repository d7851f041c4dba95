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

#include "nffd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nffd/errors.hpp"

namespace nffd {

namespace {

constexpr double kPi = std::numbers::pi;

double sin2(double x) {
    const double s = std::sin(x);
    return s * s;
}

double cos2(double x) {
    const double c = std::cos(x);
    return c * c;
}

// Validates t against [0, duration] allowing a relative slack, and clamps.
double clamp_time(double t, double duration, const char* what) {
    if (!(duration > 0.0)) throw DomainError(std::string(what) + ": duration must be positive");
    const double slack = 1e-12 * duration;
    if (t < -slack || t > duration + slack)
        throw DomainError(std::string(what) + ": time outside [0, duration]");
    return std::clamp(t, 0.0, duration);
}

}  // namespace

LatticeConfig LatticeConfig::from_params(const PhysicalParams& p) {
    LatticeConfig cfg;
    cfg.V0 = p.V0_over_Er;
    cfg.waist = p.w_over_lambdaOL;
    return cfg;
}

double LatticeConfig::k() const { return 2.0 * kPi * wave_factor; }
double LatticeConfig::lattice_constant() const { return kPi / k(); }

void LatticeConfig::validate() const {
    if (!(V0 > 0.0)) throw ConfigError("lattice: V0 must be positive");
    if (!(waist > 0.0)) throw ConfigError("lattice: waist must be positive");
    if (!(wave_factor > 0.0)) throw ConfigError("lattice: wave factor must be positive");
}

double lattice_envelope(double y, double z, const LatticeConfig& cfg) {
    const double dz = z - cfg.z_center;
    return std::exp(-2.0 * (y * y + dz * dz) / (cfg.waist * cfg.waist));
}

double lattice_potential(const Vec3& p, const LatticeConfig& cfg) {
    return -cfg.V0 * cos2(cfg.k() * p.x) * lattice_envelope(p.y, p.z, cfg);
}

QubitBasisWeights QubitBasisWeights::of(QubitState state, WeightConvention convention) {
    QubitBasisWeights w;
    w.state = state;
    w.convention = convention;
    if (convention == WeightConvention::hyperfine) {
        w.c_plus = state == QubitState::zero ? 0.25 : 0.75;
    } else {
        w.c_plus = state == QubitState::zero ? 0.75 : 0.0;
    }
    w.c_minus = 1.0 - w.c_plus;
    return w;
}

bool QubitBasisWeights::valid() const {
    return c_plus >= 0.0 && c_minus >= 0.0 && std::abs(c_plus + c_minus - 1.0) < 1e-12;
}

int QubitBasisWeights::direction() const {
    if (c_plus > c_minus) return 1;
    if (c_plus < c_minus) return -1;
    return 0;
}

double state_dependent_profile(double x, double theta, const QubitBasisWeights& weights,
                               const LatticeConfig& cfg) {
    const double kx = cfg.k() * x;
    return weights.c_plus * cos2(kx - theta) + weights.c_minus * cos2(kx + theta);
}

double state_dependent_potential(const Vec3& p, double theta, const QubitBasisWeights& weights,
                                 const LatticeConfig& cfg) {
    if (!weights.valid()) throw ContractError("state_dependent_potential: invalid weights");
    return -cfg.V0 * state_dependent_profile(p.x, theta, weights, cfg) *
           lattice_envelope(p.y, p.z, cfg);
}

ScalarSchedule::ScalarSchedule(ScheduleKind kind, double duration, double start, double end)
    : kind_(kind), duration_(duration), start_(start), end_(end) {
    if (!(duration > 0.0)) throw DomainError("ScalarSchedule: duration must be positive");
}

double ScalarSchedule::check(double t) const { return clamp_time(t, duration_, "ScalarSchedule"); }

double ScalarSchedule::value(double t) const {
    t = check(t);
    if (t == duration_) return end_;
    return start_ + (end_ - start_) * sin2(kPi * t / (2.0 * duration_));
}

double ScalarSchedule::derivative(double t) const {
    t = check(t);
    // d/dt sin^2(c t) = c sin(2 c t)
    const double c = kPi / (2.0 * duration_);
    return (end_ - start_) * c * std::sin(2.0 * c * t);
}

double theta_schedule(double t, int n, double tau3) {
    if (n < 1) throw DomainError("theta_schedule: n must be >= 1");
    t = clamp_time(t, tau3, "theta_schedule");
    if (t == tau3) return n * kPi;
    return n * kPi * sin2(kPi * t / (2.0 * tau3));
}

double eom_wrap(double theta) {
    double w = theta - kPi * std::floor(theta / kPi);
    if (w >= kPi) w -= kPi;
    if (w < 0.0) w = 0.0;
    return w;
}

CrossfadeWeights crossfade_weights(double t, double tau2) {
    t = clamp_time(t, tau2, "crossfade_weights");
    const double w_ol = t == tau2 ? 1.0 : sin2(kPi * t / (2.0 * tau2));
    return {1.0 - w_ol, w_ol};
}

double aperture_schedule(double t, double a_ini, double a_fin, double tau1) {
    return ScalarSchedule(ScheduleKind::aperture_ramp, tau1, a_ini, a_fin).value(t);
}

double quartic_integral(const Wavefunction& psi) {
    const auto& g = psi.grid();
    const auto v = psi.values();
    double s = 0.0;
    if (g.coords() == Coordinates::reduced_cylindrical) {
        // |psi|^4 2 pi r dr dz with psi = phi / r.
        const auto& r = g.axis(0);
        const std::size_t nz = g.axis(1).size;
        const double cell = 2.0 * kPi * r.step * g.axis(1).step;
        for (std::size_t i = 0; i < r.size; ++i) {
            const double ri = r.node(i);
            const double f = cell / (ri * ri * ri);
            for (std::size_t j = 0; j < nz; ++j) {
                const double m = std::norm(v[i * nz + j]);
                s += f * m * m;
            }
        }
        return s;
    }
    if (g.coords() != Coordinates::cartesian3d)
        throw ContractError("quartic_integral: needs a three-dimensional geometry");
    const auto& w = g.weights();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::norm(v[i]);
        s += w[i] * m * m;
    }
    return s;
}

namespace {

void check_ground_state(const Wavefunction& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-8)
        throw ContractError("onsite_interaction: wavefunction is not normalized");
    double peak = 0.0;
    for (const auto& v : psi.values()) peak = std::max(peak, std::abs(v));
    for (const auto& v : psi.values())
        if (std::abs(v.imag()) > 1e-6 * peak || v.real() < -1e-6 * peak)
            throw ContractError("onsite_interaction: expected a real, non-negative ground state");
}

}  // namespace

double onsite_interaction(const Wavefunction& psi0, const PhysicalParams& p) {
    if (psi0.scaling() != Scaling::lattice)
        throw ContractError("onsite_interaction: wavefunction must use the lattice scaling");
    check_ground_state(psi0);
    return 2.0 * p.a_s * p.E_r / (kPi * p.lambda_OL) * quartic_integral(psi0);
}

double onsite_interaction_dimensional(const Wavefunction& psi0, const PhysicalParams& p) {
    check_ground_state(psi0);
    const double L = psi0.scaling() == Scaling::lattice ? p.lambda_OL : p.lambda_F;
    const double integral_si = quartic_integral(psi0) / (L * L * L);
    return 4.0 * kPi * constants::hbar * constants::hbar * p.a_s / p.mass * integral_si;
}

double hold_time(double U_int) {
    if (!(U_int > 0.0)) throw DomainError("hold_time: U_int must be positive");
    return kPi * constants::hbar / U_int;
}

double HarmonicWell::quartic_integral() const {
    return 1.0 / (std::pow(2.0 * kPi, 1.5) * width_x * width_rho * width_rho);
}

double HarmonicWell::zero_point_energy() const { return 0.5 * (omega_x + 2.0 * omega_rho); }

HarmonicWell harmonic_well(const LatticeConfig& cfg) {
    cfg.validate();
    // Lattice units: hbar = 1, kinetic term -(1/4 pi^2) lap, so m = 2 pi^2.
    const double m = 2.0 * kPi * kPi;
    const double k = cfg.k();
    HarmonicWell h;
    h.omega_x = std::sqrt(2.0 * cfg.V0 * k * k / m);
    h.omega_rho = std::sqrt(4.0 * cfg.V0 / (cfg.waist * cfg.waist * m));
    h.width_x = 1.0 / std::sqrt(m * h.omega_x);
    h.width_rho = 1.0 / std::sqrt(m * h.omega_rho);
    return h;
}

double harmonic_onsite_interaction(const LatticeConfig& cfg, const PhysicalParams& p) {
    return 2.0 * p.a_s * p.E_r / (kPi * p.lambda_OL) * harmonic_well(cfg).quartic_integral();
}

double adiabatic_time_step2(const LatticeConfig& cfg, const PhysicalParams& p) {
    cfg.validate();
    return cfg.waist * cfg.k() * std::sqrt(1.0 / cfg.V0) * p.tau_OL;
}

double adiabatic_time_step3(int n, const LatticeConfig& cfg, const PhysicalParams& p) {
    if (n < 1) throw DomainError("adiabatic_time_step3: n must be >= 1");
    cfg.validate();
    return n * std::pow(1.0 / cfg.V0, 0.25) * p.tau_OL;
}

}  // namespace nffd
