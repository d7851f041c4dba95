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

#include "nffd/potential.hpp"

#include <algorithm>

#include "nffd/errors.hpp"

namespace nffd {

std::vector<double> PotentialField::evaluate(double t) const {
    std::vector<double> out(grid().size());
    evaluate(t, out);
    return out;
}

StaticPotential::StaticPotential(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ContractError("StaticPotential: value count does not match the grid");
}

void StaticPotential::evaluate(double, std::span<double> out) const {
    if (out.size() != values_.size()) throw ContractError("StaticPotential: output size");
    std::copy(values_.begin(), values_.end(), out.begin());
}

SampledPotential::SampledPotential(Grid grid, double duration, Function f)
    : grid_(std::move(grid)), duration_(duration), f_(std::move(f)) {}

void SampledPotential::evaluate(double t, std::span<double> out) const {
    if (out.size() != grid_.size()) throw ContractError("SampledPotential: output size");
    const auto& axes = grid_.axes();
    const std::size_t rank = axes.size();
    std::vector<std::size_t> idx(rank, 0);
    std::vector<double> x(rank);
    for (std::size_t n = 0; n < out.size(); ++n) {
        for (std::size_t d = 0; d < rank; ++d) x[d] = axes[d].node(idx[d]);
        out[n] = f_(t, x);
        for (std::size_t d = rank; d-- > 0;) {
            if (++idx[d] < axes[d].size) break;
            idx[d] = 0;
        }
    }
}

void ReversedPotential::evaluate(double t, std::span<double> out) const {
    inner_.evaluate(inner_.duration() - t, out);
}

ApertureRampPotential::ApertureRampPotential(Grid grid, const TrapTable& table,
                                             ScalarSchedule schedule)
    : grid_(std::move(grid)), table_(table), schedule_(schedule) {
    if (grid_.coords() != Coordinates::reduced_cylindrical || !(grid_.axis(0) == table.rho()) ||
        !(grid_.axis(1) == table.z()))
        throw ContractError("ApertureRampPotential: table axes must match the grid");
}

void ApertureRampPotential::evaluate(double t, std::span<double> out) const {
    table_.values_at(schedule_.value(t), out);
}

CrossfadePotential::CrossfadePotential(Grid grid, std::vector<double> nffd,
                                       std::vector<double> lattice, double tau2)
    : grid_(std::move(grid)), nffd_(std::move(nffd)), lattice_(std::move(lattice)), tau2_(tau2) {
    if (nffd_.size() != grid_.size() || lattice_.size() != grid_.size())
        throw ContractError("CrossfadePotential: value count does not match the grid");
    if (!(tau2 > 0.0)) throw DomainError("CrossfadePotential: tau2 must be positive");
}

void CrossfadePotential::evaluate(double t, std::span<double> out) const {
    const auto w = crossfade_weights(t, tau2_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = w.w_F * nffd_[i] + w.w_OL * lattice_[i];
}

LatticeTransportPotential::LatticeTransportPotential(Grid grid, LatticeConfig cfg,
                                                     QubitBasisWeights weights, int n, double tau3,
                                                     bool wrap)
    : grid_(std::move(grid)), cfg_(cfg), weights_(weights), n_(n), tau3_(tau3), wrap_(wrap) {
    cfg_.validate();
    if (!weights_.valid()) throw ContractError("LatticeTransportPotential: invalid weights");
    if (n < 1) throw DomainError("LatticeTransportPotential: n must be >= 1");
    if (!(tau3 > 0.0)) throw DomainError("LatticeTransportPotential: tau3 must be positive");
    if (grid_.coords() == Coordinates::reduced_cylindrical) {
        // Transverse radius rho measured from the lattice axis.
        const auto& r = grid_.axis(0);
        for (std::size_t i = 0; i < r.size; ++i)
            envelope_.push_back(lattice_envelope(r.node(i), cfg_.z_center, cfg_));
    } else if (grid_.coords() == Coordinates::cartesian2d) {
        const auto& z = grid_.axis(1);
        for (std::size_t j = 0; j < z.size; ++j)
            envelope_.push_back(lattice_envelope(0.0, z.node(j), cfg_));
    } else {
        throw ContractError("LatticeTransportPotential: unsupported geometry");
    }
}

std::size_t LatticeTransportPotential::x_axis() const {
    return grid_.coords() == Coordinates::reduced_cylindrical ? 1 : 0;
}

double LatticeTransportPotential::theta(double t) const {
    const double th = theta_schedule(t, n_, tau3_);
    return wrap_ ? eom_wrap(th) : th;
}

void LatticeTransportPotential::evaluate(double t, std::span<double> out) const {
    if (out.size() != grid_.size()) throw ContractError("LatticeTransportPotential: output size");
    const double th = theta(t);
    const auto& xa = grid_.axis(x_axis());
    std::vector<double> profile(xa.size);
    for (std::size_t i = 0; i < xa.size; ++i)
        profile[i] = -cfg_.V0 * state_dependent_profile(xa.node(i), th, weights_, cfg_);
    const std::size_t n0 = grid_.axis(0).size, n1 = grid_.axis(1).size;
    if (x_axis() == 1) {
        for (std::size_t i = 0; i < n0; ++i)
            for (std::size_t j = 0; j < n1; ++j) out[i * n1 + j] = envelope_[i] * profile[j];
    } else {
        for (std::size_t i = 0; i < n0; ++i)
            for (std::size_t j = 0; j < n1; ++j) out[i * n1 + j] = profile[i] * envelope_[j];
    }
}

}  // namespace nffd
