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

#include <functional>
#include <span>
#include <vector>

#include "nffd/fresnel.hpp"
#include "nffd/grid.hpp"
#include "nffd/lattice.hpp"

namespace nffd {

/// Time-dependent potential sampled on the nodes of a grid, in the grid's scaled
/// energy unit. Implementations are immutable and safe to evaluate concurrently.
class PotentialField {
public:
    virtual ~PotentialField() = default;

    virtual const Grid& grid() const = 0;
    /// Length of the schedule; 0 for a static field.
    virtual double duration() const = 0;
    /// Writes V(t) at every node (out.size() == grid().size()).
    virtual void evaluate(double t, std::span<double> out) const = 0;

    std::vector<double> evaluate(double t) const;
};

class StaticPotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    StaticPotential(Grid grid, std::vector<double> values);

    const Grid& grid() const override { return grid_; }
    double duration() const override { return 0.0; }
    void evaluate(double t, std::span<double> out) const override;
    const std::vector<double>& values() const { return values_; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// V(t, x) from a callable receiving t and the node coordinates.
class SampledPotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    using Function = std::function<double(double, std::span<const double>)>;
    SampledPotential(Grid grid, double duration, Function f);

    const Grid& grid() const override { return grid_; }
    double duration() const override { return duration_; }
    void evaluate(double t, std::span<double> out) const override;

private:
    Grid grid_;
    double duration_;
    Function f_;
};

/// The schedule of `inner` run backwards: V'(t) = V(T - t). Holds a reference.
class ReversedPotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    explicit ReversedPotential(const PotentialField& inner) : inner_(inner) {}

    const Grid& grid() const override { return inner_.grid(); }
    double duration() const override { return inner_.duration(); }
    void evaluate(double t, std::span<double> out) const override;

private:
    const PotentialField& inner_;
};

/// NFFD trap with the aperture following a ScalarSchedule, read from a TrapTable
/// whose axes coincide with the reduced-cylindrical grid (radial, axial).
class ApertureRampPotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    ApertureRampPotential(Grid grid, const TrapTable& table, ScalarSchedule schedule);

    const Grid& grid() const override { return grid_; }
    double duration() const override { return schedule_.duration(); }
    void evaluate(double t, std::span<double> out) const override;

private:
    Grid grid_;
    const TrapTable& table_;
    ScalarSchedule schedule_;
};

/// w_F(t) U_F + w_OL(t) U_OL with the cos^2 / sin^2 crossfade over tau2.
class CrossfadePotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    CrossfadePotential(Grid grid, std::vector<double> nffd, std::vector<double> lattice,
                       double tau2);

    const Grid& grid() const override { return grid_; }
    double duration() const override { return tau2_; }
    void evaluate(double t, std::span<double> out) const override;
    const std::vector<double>& nffd() const { return nffd_; }
    const std::vector<double>& lattice() const { return lattice_; }

private:
    Grid grid_;
    std::vector<double> nffd_;
    std::vector<double> lattice_;
    double tau2_;
};

/// State-dependent lattice with theta(t) = n pi sin^2(pi t / 2 tau3). The grid is
/// either reduced cylindrical about the lattice axis (radial, x) or cartesian2d (x, z).
/// Theta is EOM-wrapped before evaluation when `wrap` is set.
class LatticeTransportPotential final : public PotentialField {
public:
    using PotentialField::evaluate;
    LatticeTransportPotential(Grid grid, LatticeConfig cfg, QubitBasisWeights weights, int n,
                              double tau3, bool wrap = true);

    const Grid& grid() const override { return grid_; }
    double duration() const override { return tau3_; }
    void evaluate(double t, std::span<double> out) const override;
    double theta(double t) const;

private:
    std::size_t x_axis() const;

    Grid grid_;
    LatticeConfig cfg_;
    QubitBasisWeights weights_;
    int n_;
    double tau3_;
    bool wrap_;
    std::vector<double> envelope_;  // per transverse node
};

}  // namespace nffd
