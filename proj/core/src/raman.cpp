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

#include "nffd/raman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nffd/errors.hpp"
#include "nffd/units.hpp"

namespace nffd {

const Eigen::Matrix2cd& pauli(int axis) {
    using c = std::complex<double>;
    static const Eigen::Matrix2cd m[3] = {
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
        (Eigen::Matrix2cd() << 0, c(0, -1), c(0, 1), 0).finished(),
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
    };
    if (axis < 0 || axis > 2) throw DomainError("pauli: axis must be 0, 1 or 2");
    return m[axis];
}

RamanHamiltonian raman_hamiltonian(double E0, double E1, double Omega0, double Omega1,
                                   double Delta) {
    if (Delta == 0.0) throw DomainError("raman_hamiltonian: detuning must be non-zero");
    const double hbar = constants::hbar;
    RamanHamiltonian h;
    h.epsilon = E1 - E0 + hbar * (Omega1 * Omega1 - Omega0 * Omega0) / (4.0 * Delta);
    h.coupling = hbar * Omega0 * Omega1 / (4.0 * Delta);
    const double inf = std::numeric_limits<double>::infinity();
    const double split = std::abs(E1 - E0) / hbar;
    const double rabi2 = std::max(Omega0 * Omega0, Omega1 * Omega1);
    const double r1 = split > 0.0 ? std::abs(Delta) / split : inf;
    const double r2 = rabi2 > 0.0 ? Delta * Delta / rabi2 : inf;
    h.regime_ratio = std::min(r1, r2);
    return h;
}

Eigen::Matrix2cd RamanHamiltonian::matrix() const {
    return 0.5 * epsilon * pauli(2) - coupling * pauli(0);
}

Eigen::Matrix2cd RamanHamiltonian::evolve(double t) const {
    const auto n = bloch_axis();
    const double norm = std::hypot(n[0], n[2]);
    if (norm == 0.0) return Eigen::Matrix2cd::Identity();
    const double phi = norm * t / constants::hbar;
    const Eigen::Matrix2cd ns = (n[0] * pauli(0) + n[2] * pauli(2)) / norm;
    return std::cos(phi) * Eigen::Matrix2cd::Identity() -
           std::complex<double>(0.0, std::sin(phi)) * ns;
}

std::array<double, 3> RamanHamiltonian::bloch_axis() const {
    return {-coupling, 0.0, 0.5 * epsilon};
}

}  // namespace nffd
