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

#include <array>

namespace nffd {

/// Effective two-level Hamiltonian H = (epsilon / 2) sigma_z - coupling sigma_x of a
/// far-detuned Raman pair, in joules.
struct RamanHamiltonian {
    double epsilon = 0.0;
    double coupling = 0.0;
    /// min(|Delta| hbar / |E1 - E0|, |Delta|^2 / max Omega_i^2); large in the intended regime.
    double regime_ratio = 0.0;

    /// False when regime_ratio < 10; the elimination of the excited state is then poor.
    bool in_regime() const { return regime_ratio >= 10.0; }

    Eigen::Matrix2cd matrix() const;
    /// exp(-i H t / hbar), t in seconds.
    Eigen::Matrix2cd evolve(double t) const;
    /// Rotation axis on the Bloch sphere, (-coupling, 0, epsilon / 2).
    std::array<double, 3> bloch_axis() const;
};

/// E0, E1 in joules; Omega0, Omega1 and Delta in rad/s. Throws DomainError for Delta = 0.
RamanHamiltonian raman_hamiltonian(double E0, double E1, double Omega0, double Omega1,
                                   double Delta);

/// Pauli matrices x, y, z.
const Eigen::Matrix2cd& pauli(int axis);

}  // namespace nffd
