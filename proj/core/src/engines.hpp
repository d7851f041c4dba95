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

// Kinetic-step engines shared by the real- and imaginary-time drivers. Each engine
// owns the state in its internal representation (psi, not phi, on reduced-cylindrical
// grids) together with the per-node inner-product weights of that representation.

#include <complex>
#include <span>
#include <vector>

#include "nffd/grid.hpp"
#include "nffd/wavefunction.hpp"

namespace nffd::detail {

using cplx = std::complex<double>;

/// Factored tridiagonal system (I + s M) x = d sharing one coefficient set across
/// many right-hand sides.
struct Tridiagonal {
    std::vector<cplx> sub;    // a_i (a_0 unused)
    std::vector<cplx> inv;    // 1 / (b_i - a_i c'_{i-1})
    std::vector<cplx> sup_p;  // c'_i
};

class CylindricalEngine {
public:
    /// `step` multiplies the Hamiltonian: -i dt for real time, -dtau for imaginary time.
    CylindricalEngine(const Grid& grid, double kinetic, cplx step);

    void load(const Wavefunction& phi);
    void store(Wavefunction& phi) const;
    std::vector<cplx> internal(const Wavefunction& phi) const;

    std::vector<cplx>& state() { return psi_; }
    const std::vector<double>& weights() const { return weights_; }

    /// psi <- C_r C_z psi with C = (I - step/2 H)^{-1} (I + step/2 H) per direction.
    void kinetic_step();

    /// out = (-c lap) psi for the discrete operator.
    static void apply_kinetic(const Grid& grid, double kinetic, std::span<const cplx> psi,
                              std::span<cplx> out);

private:
    std::size_t nr_, nz_;
    double hr_, hz_;
    std::vector<double> r_;     // node radii
    std::vector<double> up_;    // r_{i+1/2} / r_i
    std::vector<double> down_;  // r_{i-1/2} / r_i
    cplx sr_, sz_;              // step/2 * c / h^2 factors
    Tridiagonal tr_, tz_;
    std::vector<double> weights_;
    std::vector<cplx> psi_;
    std::vector<cplx> work_;
};

class SpectralEngine {
public:
    SpectralEngine(const Grid& grid, double kinetic, cplx step);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    void load(const Wavefunction& psi);
    void store(Wavefunction& psi) const;
    std::vector<cplx> internal(const Wavefunction& psi) const;

    std::span<cplx> state() { return {data_, size_}; }
    const std::vector<double>& weights() const { return weights_; }

    /// psi <- exp(step * (-c lap)) psi, exactly in Fourier space.
    void kinetic_step();
    /// <psi|(-c lap)|psi> for the current state (unnormalized).
    double kinetic_energy();
    /// state <- F^{-1} diag(m) F state, with m given per node in FFT order.
    void fourier_multiply(std::span<const double> m);

    const std::vector<double>& k2() const { return k2_; }

    /// |k|^2 at every node in FFT order.
    static std::vector<double> wavenumbers_squared(const Grid& grid);

private:
    std::size_t size_;
    cplx* data_;
    void* forward_;
    void* backward_;
    std::vector<cplx> factor_;   // exp(step c |k|^2) / N
    std::vector<double> k2_;
    double kinetic_;
    std::vector<double> weights_;
};

}  // namespace nffd::detail
