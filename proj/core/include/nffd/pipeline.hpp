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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nffd/fresnel.hpp"
#include "nffd/lattice.hpp"
#include "nffd/potential.hpp"
#include "nffd/propagator.hpp"
#include "nffd/units.hpp"
#include "nffd/wavefunction.hpp"

namespace nffd {

enum class StepId { step1, step2, step3, step4, step3_reverse, step2_reverse, step1_reverse };

std::string_view to_string(StepId id);
StepId step_id_from_string(std::string_view s);
/// The forward step a reversed step undoes (identity for forward steps).
StepId forward_of(StepId id);
bool is_reverse(StepId id);

struct StepReport {
    StepId id = StepId::step1;
    Scaling scaling = Scaling::nffd;
    double duration_scaled = 0.0;  // tau_F (step 1) or tau_OL (steps 2, 3)
    double duration_s = 0.0;
    std::complex<double> overlap;  // final <psi(T)|psi_target>
    double final_fidelity = 0.0;   // |overlap|
    double norm_drift = 0.0;
    std::size_t steps = 0;
    double dt = 0.0;               // scaled step actually used
    std::vector<TraceSample> trace;
    std::optional<double> centroid;  // final <x> along the transport axis (step 3), lambda_OL
    std::optional<double> target_centroid;
};

// ---------------------------------------------------------------------------
// Step 1: aperture ramp in the NFFD trap, reduced cylindrical (r, z), NFFD scaling.

struct Step1Config {
    double a_ini = 1.5;
    double a_fin = 2.8;
    double r_max = 0.6;
    std::size_t nr = 64;          // radial cells
    double z_lo = 1.25;
    double z_hi = 9.75;
    std::size_t nz = 768;         // axial nodes
    std::size_t apertures = 64;   // aperture samples of the trap table
    double dt = 0.05;
    std::size_t sample_every = 100;
    double norm_tolerance = 1e-6;
    std::filesystem::path cache_dir;  // empty: build the trap table in memory only
    unsigned threads = 0;             // trap-table workers, 0 = all cores

    /// Halves both spacings and the time step.
    Step1Config refined() const;
    void validate() const;
};

class Step1Simulation {
public:
    Step1Simulation(const PhysicalParams& params, Step1Config cfg);

    const Step1Config& config() const { return cfg_; }
    const Grid& grid() const { return grid_; }
    const TrapTable& table() const { return table_; }
    const TrapProfile& initial_trap() const { return ini_; }
    const TrapProfile& final_trap() const { return fin_; }
    const Wavefunction& initial_state() const { return psi_ini_; }
    const Wavefunction& final_state() const { return psi_fin_; }
    PropagatorConfig propagator() const;

    /// Ramps a_ini -> a_fin over tau (tau_F) starting from the a_ini ground state.
    StepReport run(double tau) const;
    /// Ramps a_fin -> a_ini from the a_fin ground state, scored against the a_ini one.
    StepReport run_reverse(double tau) const;

private:
    PhysicalParams params_;
    Step1Config cfg_;
    Grid grid_;
    TrapProfile ini_, fin_;
    TrapTable table_;
    Wavefunction psi_ini_, psi_fin_;
};

// ---------------------------------------------------------------------------
// Step 2: NFFD -> lattice crossfade on a Cartesian grid, lattice scaling.

enum class Step2Geometry {
    full,      // (x, y, z)
    slice_xz,  // y = 0
    slice_yz,  // x = 0, no lattice structure
};

std::string_view to_string(Step2Geometry g);
Step2Geometry step2_geometry_from_string(std::string_view s);

struct Step2Config {
    Step2Geometry geometry = Step2Geometry::full;
    double a_fin = 2.8;
    double x_half = 0.75;      // x in [-x_half, x_half), periodic
    std::size_t nx = 48;
    double y_half = 2.4;       // y in [-y_half, y_half]
    std::size_t ny = 96;
    double z_half = 2.5;       // z in z_m +- z_half
    std::size_t nz = 64;
    double dt = 1e-3;
    std::size_t sample_every = 100;
    double norm_tolerance = 1e-6;
    /// Lattice envelope centre (lambda_OL); defaults to the trap minimum. Must lie within
    /// 1e-3 lambda_OL of it.
    std::optional<double> lattice_z_center;
    double wave_factor = 1.0;

    Step2Config refined() const;
    void validate() const;
};

class Step2Simulation {
public:
    Step2Simulation(const PhysicalParams& params, Step2Config cfg);

    const Step2Config& config() const { return cfg_; }
    const Grid& grid() const { return grid_; }
    double trap_minimum() const { return z_m_; }  // lambda_OL
    const std::vector<double>& nffd_potential() const { return nffd_; }
    const std::vector<double>& lattice_potential() const { return lattice_; }
    const Wavefunction& initial_state() const { return psi_ini_; }
    const Wavefunction& final_state() const { return psi_fin_; }
    PropagatorConfig propagator() const;

    /// Crossfade over tau (tau_OL); tau = 0 is an instantaneous switch.
    StepReport run(double tau) const;
    StepReport run_reverse(double tau) const;

private:
    PhysicalParams params_;
    Step2Config cfg_;
    LatticeConfig lattice_cfg_;
    Grid grid_;
    double z_m_ = 0.0;
    std::vector<double> nffd_, lattice_;
    Wavefunction psi_ini_, psi_fin_;
};

// ---------------------------------------------------------------------------
// Step 3: state-dependent transport, reduced cylindrical about the lattice axis
// (rho, x), lattice scaling.

struct Step3Config {
    int n = 3;
    QubitState state = QubitState::one;
    WeightConvention convention = WeightConvention::hyperfine;
    double rho_max = 1.5;
    std::size_t nrho = 48;
    std::size_t points_per_cell = 128;  // axial nodes per lattice constant
    double margin = 1.5;                // lattice constants kept beyond the end sites
    double dt = 2e-3;
    bool wrap = true;                   // EOM-wrap theta into [0, pi)
    std::size_t sample_every = 100;
    double norm_tolerance = 1e-6;
    double leakage_limit = 1e-6;        // allowed boundary density relative to the peak
    double wave_factor = 1.0;

    Step3Config refined() const;
    void validate() const;
};

class Step3Simulation {
public:
    Step3Simulation(const PhysicalParams& params, Step3Config cfg);

    const Step3Config& config() const { return cfg_; }
    const Grid& grid() const { return grid_; }
    const QubitBasisWeights& weights() const { return weights_; }
    double destination() const { return destination_; }  // lambda_OL
    const Wavefunction& initial_state() const { return psi_ini_; }
    const Wavefunction& final_state() const { return psi_fin_; }
    PropagatorConfig propagator() const;

    /// Rotates theta from 0 to n pi over tau (tau_OL).
    StepReport run(double tau) const;
    StepReport run_reverse(double tau) const;

private:
    StepReport finish(StepId id, double tau, PropagationResult r, double target_x) const;

    PhysicalParams params_;
    Step3Config cfg_;
    LatticeConfig lattice_cfg_;
    QubitBasisWeights weights_;
    Grid grid_;
    double destination_ = 0.0;
    Wavefunction psi_ini_, psi_fin_;
};

/// Ground state of the single lattice well centred at x = `center` on a reduced
/// cylindrical (rho, x) grid, with the neighbouring wells removed.
Wavefunction isolated_well_ground_state(const Grid& grid, const LatticeConfig& cfg,
                                        double center, double dt);

// ---------------------------------------------------------------------------
// Step 4 and the gate.

/// diag(1, e^{-i chi}, 1, 1) on {|00>, |01>, |10>, |11>}.
class TwoQubitPhaseGate {
public:
    explicit TwoQubitPhaseGate(double chi = 0.0);

    double chi() const { return chi_; }
    const Eigen::Matrix4cd& matrix() const { return u_; }
    Eigen::Vector4cd apply(const Eigen::Vector4cd& state) const { return u_ * state; }
    /// ||U^dagger U - I||_max.
    double unitarity_error() const;
    bool diagonal(double tol = 0.0) const;
    /// |chi - pi| with chi reduced to [0, 2 pi).
    double phase_error() const;
    /// (X (x) I) U (X (x) I), which equals CZ at chi = pi.
    Eigen::Matrix4cd local_equivalent() const;

private:
    double chi_;
    Eigen::Matrix4cd u_;
};

Eigen::Matrix4cd controlled_z();

struct Step4Config {
    double rho_max = 1.5;
    std::size_t nrho = 48;
    std::size_t points_per_cell = 128;
    double dt = 2e-3;
    double wave_factor = 1.0;
    std::optional<double> t_hold_s;  // default pi hbar / U_int
};

struct Step4Result {
    double quartic = 0.0;  // \int psi^4, lambda_OL^-3
    double U_int = 0.0;    // J
    double t_hold_s = 0.0;
    double chi = 0.0;
    TwoQubitPhaseGate gate;
};

/// U_int from psi0 (normalized lattice well ground state), the hold time and the gate.
Step4Result run_step4(const PhysicalParams& params, const Wavefunction& psi0,
                      std::optional<double> t_hold_s = std::nullopt);
/// As above with psi0 computed on the configured grid.
Step4Result run_step4(const PhysicalParams& params, const Step4Config& cfg = {});

struct GateReport {
    std::vector<StepReport> steps;
    double tau1_s = 0.0;
    double tau2_s = 0.0;
    double tau3_s = 0.0;
    double t_hold_s = 0.0;
    double T_overall_s = 0.0;
    std::size_t processes = 0;
    double overall_fidelity_model = 0.0;
};

/// 2 (tau1 + tau2 + tau3) + t_hold.
double total_gate_time(double tau1_s, double tau2_s, double tau3_s, double t_hold_s);

/// Assembles the report from simulated steps 1, 2, 3 and 3', 2', 1' (each exactly once).
/// Each step's fidelity counts once per atom. Throws ContractError for a missing or
/// repeated step.
GateReport gate_report(std::vector<StepReport> steps, double t_hold_s, std::size_t atoms = 2);

/// Model report from durations alone with a uniform per-process fidelity.
GateReport gate_report(double tau1_s, double tau2_s, double tau3_s, double t_hold_s,
                       double per_process_fidelity = 0.99, std::size_t processes = 12);

}  // namespace nffd
