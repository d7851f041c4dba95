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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "engines.hpp"
#include "nffd/errors.hpp"
#include "nffd/propagator.hpp"

namespace nffd {

using detail::cplx;

void PropagatorConfig::validate(const Grid& grid) const {
    if (!(dt > 0.0)) throw ConfigError("propagator: dt must be positive");
    if (!(kinetic > 0.0)) throw ConfigError("propagator: kinetic coefficient must be positive");
    if (sample_every == 0) throw ConfigError("propagator: sample_every must be >= 1");
    const bool cyl = grid.coords() == Coordinates::reduced_cylindrical;
    if (scheme == Scheme::crank_nicolson_adi && !cyl)
        throw ConfigError("propagator: Crank-Nicolson ADI needs a reduced-cylindrical grid");
    if (scheme == Scheme::split_step_spectral && cyl)
        throw ConfigError("propagator: split-step spectral needs a Cartesian grid");
    if (absorbing && (!(absorbing->width > 0.0) || absorbing->strength < 0.0))
        throw ConfigError("propagator: absorbing layer needs positive width and strength >= 0");
}

namespace {

// Per-node absorption rate of the optional layer.
std::vector<double> absorption_rates(const Grid& grid, const AbsorbingLayer& layer) {
    const auto& axes = grid.axes();
    const std::size_t rank = axes.size();
    const bool reduced = grid.coords() == Coordinates::reduced_cylindrical;
    std::vector<double> rate(grid.size(), 0.0);
    std::vector<std::size_t> idx(rank, 0);
    for (std::size_t n = 0; n < rate.size(); ++n) {
        double depth = 0.0;
        for (std::size_t d = 0; d < rank; ++d) {
            const double x = axes[d].node(idx[d]);
            const double hi = axes[d].back() - x;
            const double lo = x - axes[d].node(0);
            depth = std::max(depth, layer.width - hi);
            if (!(reduced && d == 0)) depth = std::max(depth, layer.width - lo);
        }
        if (depth > 0.0) {
            const double s = depth / layer.width;
            rate[n] = layer.strength * s * s;
        }
        for (std::size_t d = rank; d-- > 0;) {
            if (++idx[d] < axes[d].size) break;
            idx[d] = 0;
        }
    }
    return rate;
}

template <typename Engine>
PropagationResult drive(const Wavefunction& psi0, const PotentialField& potential,
                        const PropagatorConfig& cfg, double T, const Wavefunction* reference) {
    const Grid& grid = psi0.grid();
    cfg.validate(grid);
    if (!(potential.grid() == grid))
        throw ContractError("propagate: potential and wavefunction grids differ");
    if (reference && !(reference->grid() == grid))
        throw ContractError("propagate: reference and wavefunction grids differ");
    if (!(T >= 0.0)) throw DomainError("propagate: duration must be non-negative");

    const std::size_t steps =
        T > 0.0 ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(T / cfg.dt - 1e-9)))
                : 0;
    const double h = steps ? T / static_cast<double>(steps) : cfg.dt;
    const std::size_t n = grid.size();

    std::vector<double> v(n), vn(n);
    potential.evaluate(steps ? 0.5 * h : 0.0, v);
    {
        const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        if (h * (*hi - *lo) > cfg.max_phase_per_step) {
            std::ostringstream msg;
            msg << "propagate: dt too large for the potential range (phase per step "
                << h * (*hi - *lo) << " > " << cfg.max_phase_per_step << ")";
            throw ConfigError(msg.str());
        }
    }

    Engine engine(grid, cfg.kinetic, cplx(0.0, -h));
    engine.load(psi0);
    const auto& w = engine.weights();
    std::vector<cplx> ref;
    if (reference) ref = engine.internal(*reference);
    std::vector<double> rate;
    if (cfg.absorbing) rate = absorption_rates(grid, *cfg.absorbing);

    auto state = [&]() { return std::span<cplx>(engine.state()); };
    auto kick = [&](const std::vector<double>& a, const std::vector<double>* b, double tau) {
        auto s = state();
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = -(b ? a[i] + (*b)[i] : a[i]) * tau;
            cplx f(std::cos(phase), std::sin(phase));
            if (!rate.empty()) f *= std::exp(-(b ? 2.0 : 1.0) * rate[i] * tau);
            s[i] *= f;
        }
    };

    PropagationResult out;
    out.steps = steps;
    out.dt = h;
    double norm0 = 0.0;
    auto sample = [&](double t) {
        const auto s = state();
        double nn = 0.0, re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nn += w[i] * std::norm(s[i]);
            if (!ref.empty()) {
                const cplx p = std::conj(s[i]) * ref[i];
                re += w[i] * p.real();
                im += w[i] * p.imag();
            }
        }
        const double norm = std::sqrt(nn);
        if (out.trace.empty()) norm0 = norm;
        out.trace.push_back({t, norm, {re, im}});
        out.norm_drift = std::max(out.norm_drift, std::abs(norm - norm0) / norm0);
    };

    sample(0.0);
    if (steps > 0) {
        kick(v, nullptr, 0.5 * h);
        for (std::size_t k = 0; k < steps; ++k) {
            engine.kinetic_step();
            if (k + 1 == steps) {
                kick(v, nullptr, 0.5 * h);
                sample(T);
                break;
            }
            potential.evaluate((static_cast<double>(k) + 1.5) * h, vn);
            if ((k + 1) % cfg.sample_every == 0) {
                kick(v, nullptr, 0.5 * h);
                sample(static_cast<double>(k + 1) * h);
                kick(vn, nullptr, 0.5 * h);
            } else {
                kick(v, &vn, 0.5 * h);
            }
            std::swap(v, vn);
        }
    }

    if (!cfg.absorbing && out.norm_drift > cfg.norm_tolerance) {
        std::ostringstream msg;
        msg << "propagate: norm drift " << out.norm_drift << " exceeds " << cfg.norm_tolerance;
        throw IntegrityError(msg.str());
    }
    out.psi = Wavefunction(grid, psi0.scaling());
    engine.store(out.psi);
    return out;
}

}  // namespace

PropagationResult propagate_cylindrical(const Wavefunction& phi, const PotentialField& potential,
                                        const PropagatorConfig& cfg, double T,
                                        const Wavefunction* reference) {
    PropagatorConfig c = cfg;
    c.scheme = Scheme::crank_nicolson_adi;
    return drive<detail::CylindricalEngine>(phi, potential, c, T, reference);
}

PropagationResult propagate_cartesian(const Wavefunction& psi, const PotentialField& potential,
                                      const PropagatorConfig& cfg, double T,
                                      const Wavefunction* reference) {
    PropagatorConfig c = cfg;
    c.scheme = Scheme::split_step_spectral;
    return drive<detail::SpectralEngine>(psi, potential, c, T, reference);
}

PropagationResult propagate(const Wavefunction& psi, const PotentialField& potential,
                            const PropagatorConfig& cfg, double T, const Wavefunction* reference) {
    return cfg.scheme == Scheme::crank_nicolson_adi
               ? propagate_cylindrical(psi, potential, cfg, T, reference)
               : propagate_cartesian(psi, potential, cfg, T, reference);
}

}  // namespace nffd
