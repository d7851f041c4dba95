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

#include "nffd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "nffd/errors.hpp"

namespace nffd {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLatticeKinetic = 1.0 / (4.0 * kPi * kPi);

constexpr std::pair<StepId, std::string_view> kStepNames[] = {
    {StepId::step1, "1"},          {StepId::step2, "2"},          {StepId::step3, "3"},
    {StepId::step4, "4"},          {StepId::step3_reverse, "3'"}, {StepId::step2_reverse, "2'"},
    {StepId::step1_reverse, "1'"},
};

StepReport make_report(StepId id, Scaling scaling, double tau, double time_unit,
                       PropagationResult&& r) {
    StepReport rep;
    rep.id = id;
    rep.scaling = scaling;
    rep.duration_scaled = tau;
    rep.duration_s = tau * time_unit;
    rep.overlap = r.trace.back().overlap;
    rep.final_fidelity = std::abs(rep.overlap);
    rep.norm_drift = r.norm_drift;
    rep.steps = r.steps;
    rep.dt = r.dt;
    rep.trace = std::move(r.trace);
    return rep;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

GroundStateSettings patient() {
    GroundStateSettings s;
    s.max_steps = 200000;
    return s;
}

}  // namespace

std::string_view to_string(StepId id) {
    for (const auto& [k, name] : kStepNames)
        if (k == id) return name;
    return "?";
}

StepId step_id_from_string(std::string_view s) {
    for (const auto& [k, name] : kStepNames)
        if (name == s) return k;
    throw ConfigError("unknown step id: " + std::string(s));
}

StepId forward_of(StepId id) {
    switch (id) {
        case StepId::step1_reverse: return StepId::step1;
        case StepId::step2_reverse: return StepId::step2;
        case StepId::step3_reverse: return StepId::step3;
        default: return id;
    }
}

bool is_reverse(StepId id) { return forward_of(id) != id; }

// ---------------------------------------------------------------------------
// Step 1

Step1Config Step1Config::refined() const {
    Step1Config c = *this;
    c.nr = 2 * nr;
    c.nz = 2 * nz - 1;
    c.dt = 0.5 * dt;
    return c;
}

void Step1Config::validate() const {
    require(a_ini >= 1.0 && a_ini <= 4.0 && a_fin >= 1.0 && a_fin <= 4.0,
            "step1: apertures must lie in [1, 4] lambda_F");
    require(r_max > 0.0 && nr >= 4, "step1: need r_max > 0 and at least 4 radial cells");
    require(z_lo >= min_field_z && z_hi > z_lo && nz >= 8,
            "step1: need min_field_z <= z_lo < z_hi and at least 8 axial nodes");
    require(apertures >= 2, "step1: need at least 2 aperture samples");
    require(dt > 0.0 && sample_every >= 1, "step1: need dt > 0 and sample_every >= 1");
}

Step1Simulation::Step1Simulation(const PhysicalParams& params, Step1Config cfg)
    : params_(params), cfg_(std::move(cfg)) {
    cfg_.validate();
    const Axis z = Axis::spanning(cfg_.z_lo, cfg_.z_hi, cfg_.nz);
    grid_ = Grid::reduced_cylindrical(cfg_.r_max, cfg_.nr, z);
    ini_ = find_trap_minimum({cfg_.a_ini}, params_);
    fin_ = find_trap_minimum({cfg_.a_fin}, params_);
    for (const auto* t : {&ini_, &fin_}) {
        if (t->z_m <= cfg_.z_lo || t->z_m >= cfg_.z_hi) {
            std::ostringstream msg;
            msg << "step1: trap minimum z = " << t->z_m << " for a = " << t->aperture
                << " lies outside [" << cfg_.z_lo << ", " << cfg_.z_hi << "]";
            throw GeometryError(msg.str());
        }
    }

    std::vector<double> radii;
    const double lo = std::min(cfg_.a_ini, cfg_.a_fin), hi = std::max(cfg_.a_ini, cfg_.a_fin);
    if (lo == hi) {
        radii.push_back(lo);
    } else {
        for (std::size_t k = 0; k < cfg_.apertures; ++k)
            radii.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                     static_cast<double>(cfg_.apertures - 1));
    }
    table_ = cfg_.cache_dir.empty()
                 ? TrapTable::build(grid_.axis(0), z, radii, {}, cfg_.threads)
                 : TrapTable::build_cached(cfg_.cache_dir, grid_.axis(0), z, radii);

    const auto pc = propagator();
    psi_ini_ = ground_state(StaticPotential(grid_, table_.values_at(cfg_.a_ini)), Scaling::nffd,
                            pc, patient())
                   .psi;
    psi_fin_ = ground_state(StaticPotential(grid_, table_.values_at(cfg_.a_fin)), Scaling::nffd,
                            pc, patient())
                   .psi;
}

PropagatorConfig Step1Simulation::propagator() const {
    PropagatorConfig pc;
    pc.dt = cfg_.dt;
    pc.kinetic = params_.alpha;
    pc.scheme = Scheme::crank_nicolson_adi;
    pc.sample_every = cfg_.sample_every;
    pc.norm_tolerance = cfg_.norm_tolerance;
    return pc;
}

StepReport Step1Simulation::run(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("step1: duration must be non-negative");
    const auto pc = propagator();
    if (tau == 0.0) {
        StaticPotential v(grid_, table_.values_at(cfg_.a_ini));
        return make_report(StepId::step1, Scaling::nffd, tau, params_.tau_F,
                           propagate(psi_ini_, v, pc, 0.0, &psi_fin_));
    }
    ApertureRampPotential v(grid_, table_,
                            {ScheduleKind::aperture_ramp, tau, cfg_.a_ini, cfg_.a_fin});
    return make_report(StepId::step1, Scaling::nffd, tau, params_.tau_F,
                       propagate(psi_ini_, v, pc, tau, &psi_fin_));
}

StepReport Step1Simulation::run_reverse(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("step1: duration must be non-negative");
    const auto pc = propagator();
    if (tau == 0.0) {
        StaticPotential v(grid_, table_.values_at(cfg_.a_fin));
        return make_report(StepId::step1_reverse, Scaling::nffd, tau, params_.tau_F,
                           propagate(psi_fin_, v, pc, 0.0, &psi_ini_));
    }
    ApertureRampPotential fwd(grid_, table_,
                              {ScheduleKind::aperture_ramp, tau, cfg_.a_ini, cfg_.a_fin});
    ReversedPotential v(fwd);
    return make_report(StepId::step1_reverse, Scaling::nffd, tau, params_.tau_F,
                       propagate(psi_fin_, v, pc, tau, &psi_ini_));
}

// ---------------------------------------------------------------------------
// Step 2

constexpr std::pair<Step2Geometry, std::string_view> kGeometryNames[] = {
    {Step2Geometry::full, "full"},
    {Step2Geometry::slice_xz, "slice_xz"},
    {Step2Geometry::slice_yz, "slice_yz"},
};

std::string_view to_string(Step2Geometry g) {
    for (const auto& [k, name] : kGeometryNames)
        if (k == g) return name;
    return "?";
}

Step2Geometry step2_geometry_from_string(std::string_view s) {
    for (const auto& [k, name] : kGeometryNames)
        if (name == s) return k;
    throw ConfigError("unknown step2 geometry: " + std::string(s));
}

Step2Config Step2Config::refined() const {
    Step2Config c = *this;
    c.nx = 2 * nx;
    c.ny = 2 * ny - 1;
    c.nz = 2 * nz - 1;
    c.dt = 0.5 * dt;
    return c;
}

void Step2Config::validate() const {
    require(a_fin >= 1.0 && a_fin <= 4.0, "step2: aperture must lie in [1, 4] lambda_F");
    require(x_half > 0.0 && nx >= 8, "step2: need x_half > 0 and at least 8 x nodes");
    require(y_half > 0.0 && ny >= 8, "step2: need y_half > 0 and at least 8 y nodes");
    require(z_half > 0.0 && nz >= 8, "step2: need z_half > 0 and at least 8 z nodes");
    require(dt > 0.0 && sample_every >= 1, "step2: need dt > 0 and sample_every >= 1");
    require(wave_factor > 0.0, "step2: wave_factor must be positive");
}

Step2Simulation::Step2Simulation(const PhysicalParams& params, Step2Config cfg)
    : params_(params), cfg_(std::move(cfg)) {
    cfg_.validate();
    const double f_to_ol = params_.lambda_F / params_.lambda_OL;
    const double ol_to_f = 1.0 / f_to_ol;
    z_m_ = find_trap_minimum({cfg_.a_fin}, params_).z_m * f_to_ol;
    lattice_cfg_ = LatticeConfig::from_params(params_);
    lattice_cfg_.wave_factor = cfg_.wave_factor;
    lattice_cfg_.z_center = z_m_;
    if (cfg_.lattice_z_center) {
        if (std::abs(*cfg_.lattice_z_center - z_m_) > 1e-3) {
            std::ostringstream msg;
            msg << "step2: lattice centre " << *cfg_.lattice_z_center
                << " lambda_OL is off the trap minimum " << z_m_ << " by more than 1e-3";
            throw ConfigError(msg.str());
        }
        lattice_cfg_.z_center = *cfg_.lattice_z_center;
    }
    lattice_cfg_.validate();

    const Axis xa = Axis::periodic(-cfg_.x_half, cfg_.x_half, cfg_.nx);
    const Axis ya = Axis::spanning(-cfg_.y_half, cfg_.y_half, cfg_.ny);
    const Axis za = Axis::spanning(z_m_ - cfg_.z_half, z_m_ + cfg_.z_half, cfg_.nz);
    switch (cfg_.geometry) {
        case Step2Geometry::full: grid_ = Grid::cartesian3d(xa, ya, za); break;
        case Step2Geometry::slice_xz: grid_ = Grid::cartesian2d(xa, za); break;
        case Step2Geometry::slice_yz: grid_ = Grid::cartesian2d(ya, za); break;
    }

    // The trap is symmetric about its axis: tabulate U_F(rho, z) once and interpolate.
    double rho_max = 0.0;
    if (cfg_.geometry != Step2Geometry::slice_yz) rho_max += cfg_.x_half * cfg_.x_half;
    if (cfg_.geometry != Step2Geometry::slice_xz) rho_max += cfg_.y_half * cfg_.y_half;
    rho_max = std::sqrt(rho_max) * ol_to_f + 0.05;
    constexpr double kTableStep = 0.01;  // lambda_F
    const auto n_rho = static_cast<std::size_t>(std::ceil(rho_max / kTableStep)) + 1;
    const double z_lo = za.node(0) * ol_to_f - 0.05, z_hi = za.back() * ol_to_f + 0.05;
    const auto n_z = static_cast<std::size_t>(std::ceil((z_hi - z_lo) / kTableStep)) + 1;
    const TrapTable table = TrapTable::build(Axis::spanning(0.0, rho_max, n_rho),
                                             Axis::spanning(z_lo, z_hi, n_z), {cfg_.a_fin});

    const double half_cell = 0.5 * lattice_cfg_.lattice_constant();
    nffd_.resize(grid_.size());
    lattice_.resize(grid_.size());
    std::vector<double> isolated(grid_.size());
    std::vector<double> q(grid_.rank());
    std::vector<std::size_t> idx(grid_.rank(), 0);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        for (std::size_t d = 0; d < grid_.rank(); ++d) q[d] = grid_.axis(d).node(idx[d]);
        Vec3 p;
        switch (cfg_.geometry) {
            case Step2Geometry::full: p = {q[0], q[1], q[2]}; break;
            case Step2Geometry::slice_xz: p = {q[0], 0.0, q[1]}; break;
            case Step2Geometry::slice_yz: p = {0.0, q[0], q[1]}; break;
        }
        const double rho = std::hypot(p.x, p.y) * ol_to_f;
        nffd_[k] = params_.U0_over_Er * table.interpolate(cfg_.a_fin, rho, p.z * ol_to_f);
        lattice_[k] = nffd::lattice_potential(p, lattice_cfg_);
        isolated[k] = std::abs(p.x) <= half_cell ? lattice_[k] : 0.0;
        for (std::size_t d = grid_.rank(); d-- > 0;) {
            if (++idx[d] < grid_.axis(d).size) break;
            idx[d] = 0;
        }
    }

    const auto pc = propagator();
    psi_ini_ = ground_state(StaticPotential(grid_, nffd_), Scaling::lattice, pc, patient()).psi;
    psi_fin_ =
        ground_state(StaticPotential(grid_, std::move(isolated)), Scaling::lattice, pc, patient())
            .psi;
}

PropagatorConfig Step2Simulation::propagator() const {
    PropagatorConfig pc;
    pc.dt = cfg_.dt;
    pc.kinetic = kLatticeKinetic;
    pc.scheme = Scheme::split_step_spectral;
    pc.sample_every = cfg_.sample_every;
    pc.norm_tolerance = cfg_.norm_tolerance;
    return pc;
}

StepReport Step2Simulation::run(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("step2: duration must be non-negative");
    const auto pc = propagator();
    if (tau == 0.0)
        return make_report(StepId::step2, Scaling::lattice, tau, params_.tau_OL,
                           propagate(psi_ini_, StaticPotential(grid_, lattice_), pc, 0.0,
                                     &psi_fin_));
    CrossfadePotential v(grid_, nffd_, lattice_, tau);
    return make_report(StepId::step2, Scaling::lattice, tau, params_.tau_OL,
                       propagate(psi_ini_, v, pc, tau, &psi_fin_));
}

StepReport Step2Simulation::run_reverse(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("step2: duration must be non-negative");
    const auto pc = propagator();
    if (tau == 0.0)
        return make_report(StepId::step2_reverse, Scaling::lattice, tau, params_.tau_OL,
                           propagate(psi_fin_, StaticPotential(grid_, nffd_), pc, 0.0,
                                     &psi_ini_));
    CrossfadePotential fwd(grid_, nffd_, lattice_, tau);
    ReversedPotential v(fwd);
    return make_report(StepId::step2_reverse, Scaling::lattice, tau, params_.tau_OL,
                       propagate(psi_fin_, v, pc, tau, &psi_ini_));
}

// ---------------------------------------------------------------------------
// Step 3

Wavefunction isolated_well_ground_state(const Grid& grid, const LatticeConfig& cfg, double center,
                                        double dt) {
    if (grid.coords() != Coordinates::reduced_cylindrical)
        throw ContractError("isolated_well_ground_state: needs a reduced-cylindrical grid");
    cfg.validate();
    const double half_cell = 0.5 * cfg.lattice_constant();
    SampledPotential v(grid, 0.0, [&](double, std::span<const double> q) {
        const double rho = q[0], x = q[1];
        if (std::abs(x - center) > half_cell) return 0.0;
        return nffd::lattice_potential({x, rho, cfg.z_center}, cfg);
    });
    PropagatorConfig pc;
    pc.dt = dt;
    pc.kinetic = kLatticeKinetic;
    pc.scheme = Scheme::crank_nicolson_adi;
    return ground_state(v, Scaling::lattice, pc, patient()).psi;
}

Step3Config Step3Config::refined() const {
    Step3Config c = *this;
    c.nrho = 2 * nrho;
    c.points_per_cell = 2 * points_per_cell;
    c.dt = 0.5 * dt;
    return c;
}

void Step3Config::validate() const {
    require(n >= 1, "step3: n must be >= 1");
    require(rho_max > 0.0 && nrho >= 4, "step3: need rho_max > 0 and at least 4 radial cells");
    require(points_per_cell >= 8, "step3: need at least 8 points per lattice cell");
    require(margin >= 0.5, "step3: margin must be at least half a lattice constant");
    require(dt > 0.0 && sample_every >= 1, "step3: need dt > 0 and sample_every >= 1");
    require(leakage_limit > 0.0, "step3: leakage limit must be positive");
    require(wave_factor > 0.0, "step3: wave_factor must be positive");
}

Step3Simulation::Step3Simulation(const PhysicalParams& params, Step3Config cfg)
    : params_(params), cfg_(std::move(cfg)) {
    cfg_.validate();
    lattice_cfg_ = LatticeConfig::from_params(params_);
    lattice_cfg_.wave_factor = cfg_.wave_factor;
    lattice_cfg_.z_center = 0.0;
    lattice_cfg_.validate();
    weights_ = QubitBasisWeights::of(cfg_.state, cfg_.convention);

    const double d = lattice_cfg_.lattice_constant();
    const int dir = weights_.direction();
    destination_ = cfg_.n * d * dir;
    const double span = cfg_.n + 2.0 * cfg_.margin;
    const double lo = dir >= 0 ? -cfg_.margin * d : -(cfg_.n + cfg_.margin) * d;
    const std::size_t nodes =
        static_cast<std::size_t>(std::lround(span * static_cast<double>(cfg_.points_per_cell))) + 1;
    grid_ = Grid::reduced_cylindrical(cfg_.rho_max, cfg_.nrho,
                                      Axis::spanning(lo, lo + span * d, nodes));

    psi_ini_ = isolated_well_ground_state(grid_, lattice_cfg_, 0.0, cfg_.dt);
    psi_fin_ = isolated_well_ground_state(grid_, lattice_cfg_, destination_, cfg_.dt);
}

PropagatorConfig Step3Simulation::propagator() const {
    PropagatorConfig pc;
    pc.dt = cfg_.dt;
    pc.kinetic = kLatticeKinetic;
    pc.scheme = Scheme::crank_nicolson_adi;
    pc.sample_every = cfg_.sample_every;
    pc.norm_tolerance = cfg_.norm_tolerance;
    return pc;
}

StepReport Step3Simulation::finish(StepId id, double tau, PropagationResult r,
                                   double target_x) const {
    const double leak = std::pow(r.psi.boundary_fraction(), 2);
    if (leak > cfg_.leakage_limit) {
        std::ostringstream msg;
        msg << "step3: boundary density " << leak << " exceeds " << cfg_.leakage_limit;
        throw IntegrityError(msg.str());
    }
    const double x = r.psi.expectation(1);
    auto rep = make_report(id, Scaling::lattice, tau, params_.tau_OL, std::move(r));
    rep.centroid = x;
    rep.target_centroid = target_x;
    return rep;
}

StepReport Step3Simulation::run(double tau) const {
    if (!(tau > 0.0)) throw DomainError("step3: duration must be positive");
    LatticeTransportPotential v(grid_, lattice_cfg_, weights_, cfg_.n, tau, cfg_.wrap);
    return finish(StepId::step3, tau, propagate(psi_ini_, v, propagator(), tau, &psi_fin_),
                  destination_);
}

StepReport Step3Simulation::run_reverse(double tau) const {
    if (!(tau > 0.0)) throw DomainError("step3: duration must be positive");
    LatticeTransportPotential fwd(grid_, lattice_cfg_, weights_, cfg_.n, tau, cfg_.wrap);
    ReversedPotential v(fwd);
    return finish(StepId::step3_reverse, tau,
                  propagate(psi_fin_, v, propagator(), tau, &psi_ini_), 0.0);
}

// ---------------------------------------------------------------------------
// Step 4 and the gate

TwoQubitPhaseGate::TwoQubitPhaseGate(double chi) : chi_(chi), u_(Eigen::Matrix4cd::Identity()) {
    u_(1, 1) = std::polar(1.0, -chi);
}

double TwoQubitPhaseGate::unitarity_error() const {
    return (u_.adjoint() * u_ - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

bool TwoQubitPhaseGate::diagonal(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(u_(i, j)) > tol) return false;
    return true;
}

double TwoQubitPhaseGate::phase_error() const {
    double c = std::fmod(chi_, 2.0 * kPi);
    if (c < 0.0) c += 2.0 * kPi;
    return std::abs(c - kPi);
}

Eigen::Matrix4cd TwoQubitPhaseGate::local_equivalent() const {
    Eigen::Matrix4cd xi = Eigen::Matrix4cd::Zero();
    // X on the first qubit: |0b> <-> |1b>.
    xi(0, 2) = xi(2, 0) = xi(1, 3) = xi(3, 1) = 1.0;
    return xi * u_ * xi;
}

Eigen::Matrix4cd controlled_z() {
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1.0;
    return cz;
}

Step4Result run_step4(const PhysicalParams& params, const Wavefunction& psi0,
                      std::optional<double> t_hold_s) {
    Step4Result r;
    r.quartic = quartic_integral(psi0);
    r.U_int = onsite_interaction(psi0, params);
    if (t_hold_s && !(*t_hold_s >= 0.0)) throw DomainError("step4: hold time must be >= 0");
    r.t_hold_s = t_hold_s ? *t_hold_s : hold_time(r.U_int);
    r.chi = r.U_int * r.t_hold_s / constants::hbar;
    r.gate = TwoQubitPhaseGate(r.chi);
    return r;
}

Step4Result run_step4(const PhysicalParams& params, const Step4Config& cfg) {
    LatticeConfig lc = LatticeConfig::from_params(params);
    lc.wave_factor = cfg.wave_factor;
    lc.validate();
    if (!(cfg.rho_max > 0.0) || cfg.nrho < 4 || cfg.points_per_cell < 8 || !(cfg.dt > 0.0))
        throw ConfigError("step4: invalid grid");
    const double d = lc.lattice_constant();
    const Grid grid = Grid::reduced_cylindrical(
        cfg.rho_max, cfg.nrho, Axis::spanning(-d, d, 2 * cfg.points_per_cell + 1));
    return run_step4(params, isolated_well_ground_state(grid, lc, 0.0, cfg.dt), cfg.t_hold_s);
}

double total_gate_time(double tau1_s, double tau2_s, double tau3_s, double t_hold_s) {
    return 2.0 * (tau1_s + tau2_s + tau3_s) + t_hold_s;
}

GateReport gate_report(std::vector<StepReport> steps, double t_hold_s, std::size_t atoms) {
    if (atoms == 0) throw ContractError("gate_report: need at least one atom");
    const StepId required[] = {StepId::step1,         StepId::step2,         StepId::step3,
                               StepId::step3_reverse, StepId::step2_reverse, StepId::step1_reverse};
    GateReport g;
    g.overall_fidelity_model = 1.0;
    for (StepId id : required) {
        const auto count = std::count_if(steps.begin(), steps.end(),
                                         [&](const StepReport& s) { return s.id == id; });
        if (count != 1) {
            std::ostringstream msg;
            msg << "gate_report: step " << to_string(id) << (count == 0 ? " missing" : " repeated");
            throw ContractError(msg.str());
        }
        const auto& s = *std::find_if(steps.begin(), steps.end(),
                                      [&](const StepReport& r) { return r.id == id; });
        g.overall_fidelity_model *= std::pow(s.final_fidelity, static_cast<double>(atoms));
        if (id == StepId::step1) g.tau1_s = s.duration_s;
        if (id == StepId::step2) g.tau2_s = s.duration_s;
        if (id == StepId::step3) g.tau3_s = s.duration_s;
    }
    g.processes = 6 * atoms;
    g.t_hold_s = t_hold_s;
    g.T_overall_s = total_gate_time(g.tau1_s, g.tau2_s, g.tau3_s, t_hold_s);
    g.steps = std::move(steps);
    return g;
}

GateReport gate_report(double tau1_s, double tau2_s, double tau3_s, double t_hold_s,
                       double per_process_fidelity, std::size_t processes) {
    if (!(per_process_fidelity >= 0.0 && per_process_fidelity <= 1.0))
        throw DomainError("gate_report: per-process fidelity must lie in [0, 1]");
    for (double t : {tau1_s, tau2_s, tau3_s, t_hold_s})
        if (!(t >= 0.0)) throw DomainError("gate_report: durations must be non-negative");
    GateReport g;
    g.tau1_s = tau1_s;
    g.tau2_s = tau2_s;
    g.tau3_s = tau3_s;
    g.t_hold_s = t_hold_s;
    g.T_overall_s = total_gate_time(tau1_s, tau2_s, tau3_s, t_hold_s);
    g.processes = processes;
    g.overall_fidelity_model = std::pow(per_process_fidelity, static_cast<double>(processes));
    return g;
}

}  // namespace nffd
