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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "nffd/grid.hpp"

namespace nffd {

/// Which dimensionless formulation the values and coordinates refer to.
enum class Scaling {
    nffd,     // lambda_F, U0, tau_F
    lattice,  // lambda_OL, E_r, tau_OL
};

std::string_view to_string(Scaling s);
Scaling scaling_from_string(std::string_view s);

/// Complex field on a Grid. For reduced-cylindrical grids the stored value is
/// phi = r psi; every other accessor below speaks about that stored field unless it
/// says "psi".
class Wavefunction {
public:
    using value_type = std::complex<double>;

    Wavefunction() = default;
    Wavefunction(Grid grid, Scaling scaling);
    Wavefunction(Grid grid, Scaling scaling, std::vector<value_type> values);

    /// Samples the physical psi at every node; `f` receives the node coordinates.
    static Wavefunction from_psi(Grid grid, Scaling scaling,
                                 const std::function<value_type(std::span<const double>)>& f);

    const Grid& grid() const { return grid_; }
    Scaling scaling() const { return scaling_; }
    Coordinates coords() const { return grid_.coords(); }
    std::size_t size() const { return values_.size(); }

    std::span<value_type> values() { return values_; }
    std::span<const value_type> values() const { return values_; }
    value_type& operator[](std::size_t i) { return values_[i]; }
    const value_type& operator[](std::size_t i) const { return values_[i]; }

    /// Physical psi at flat node index i (divides by r on reduced-cylindrical grids).
    value_type psi(std::size_t i) const;

    /// sqrt of the measure-weighted squared modulus.
    double norm() const;
    /// Scales to unit norm; throws ContractError for a zero field.
    void normalize();
    /// <q_axis> under |psi|^2.
    double expectation(std::size_t axis) const;
    /// Largest |psi| on the outer faces divided by the largest |psi| overall. The
    /// radial axis face of a reduced-cylindrical grid is not a boundary.
    double boundary_fraction() const;
    /// Multiplies by a global phase so the largest-modulus node is real and positive.
    void fix_phase();

private:
    Grid grid_;
    Scaling scaling_ = Scaling::nffd;
    std::vector<value_type> values_;
};

/// <a|b> = sum_i w_i conj(a_i) b_i. Throws ContractError on grid or coordinate mismatch.
std::complex<double> inner_product(const Wavefunction& a, const Wavefunction& b);

struct Overlap {
    std::complex<double> value;
    double magnitude = 0.0;
};

/// F = <psi|ref>, the overlap of the evolved state with the reference state.
Overlap fidelity(const Wavefunction& psi, const Wavefunction& ref);

}  // namespace nffd
