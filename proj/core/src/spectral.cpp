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

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "engines.hpp"
#include "nffd/errors.hpp"

namespace nffd::detail {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::vector<double> SpectralEngine::wavenumbers_squared(const Grid& grid) {
    const auto& axes = grid.axes();
    const std::size_t rank = axes.size();
    std::vector<std::vector<double>> k(rank);
    for (std::size_t d = 0; d < rank; ++d) {
        const std::size_t n = axes[d].size;
        const double L = axes[d].step * static_cast<double>(n);
        k[d].resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double idx = m <= n / 2 ? static_cast<double>(m)
                                          : static_cast<double>(m) - static_cast<double>(n);
            k[d][m] = 2.0 * std::numbers::pi * idx / L;
        }
    }
    std::vector<double> k2(grid.size());
    std::vector<std::size_t> idx(rank, 0);
    for (std::size_t n = 0; n < k2.size(); ++n) {
        double s = 0.0;
        for (std::size_t d = 0; d < rank; ++d) s += k[d][idx[d]] * k[d][idx[d]];
        k2[n] = s;
        for (std::size_t d = rank; d-- > 0;) {
            if (++idx[d] < axes[d].size) break;
            idx[d] = 0;
        }
    }
    return k2;
}

SpectralEngine::SpectralEngine(const Grid& grid, double kinetic, cplx step)
    : size_(grid.size()), kinetic_(kinetic) {
    if (grid.coords() == Coordinates::reduced_cylindrical)
        throw ContractError("SpectralEngine: needs a Cartesian grid");
    data_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size_));
    if (!data_) throw std::bad_alloc();
    std::vector<int> dims;
    for (const auto& a : grid.axes()) dims.push_back(static_cast<int>(a.size));
    {
        std::lock_guard lock(planner_mutex());
        auto* buf = reinterpret_cast<fftw_complex*>(data_);
        forward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                 FFTW_FORWARD, FFTW_ESTIMATE);
        backward_ = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    k2_ = wavenumbers_squared(grid);
    factor_.resize(size_);
    const double inv_n = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) factor_[i] = std::exp(step * kinetic * k2_[i]) * inv_n;
    weights_ = grid.weights();
    for (std::size_t i = 0; i < size_; ++i) data_[i] = cplx{};
}

SpectralEngine::~SpectralEngine() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
    fftw_free(data_);
}

void SpectralEngine::load(const Wavefunction& psi) {
    if (psi.size() != size_) throw ContractError("SpectralEngine: grid mismatch");
    const auto v = psi.values();
    for (std::size_t i = 0; i < size_; ++i) data_[i] = v[i];
}

std::vector<cplx> SpectralEngine::internal(const Wavefunction& psi) const {
    if (psi.size() != size_) throw ContractError("SpectralEngine: grid mismatch");
    return {psi.values().begin(), psi.values().end()};
}

void SpectralEngine::store(Wavefunction& psi) const {
    auto v = psi.values();
    for (std::size_t i = 0; i < size_; ++i) v[i] = data_[i];
}

void SpectralEngine::kinetic_step() {
    fftw_execute(static_cast<fftw_plan>(forward_));
    for (std::size_t i = 0; i < size_; ++i) data_[i] *= factor_[i];
    fftw_execute(static_cast<fftw_plan>(backward_));
}

double SpectralEngine::kinetic_energy() {
    fftw_execute(static_cast<fftw_plan>(forward_));
    double s = 0.0;
    for (std::size_t i = 0; i < size_; ++i) s += k2_[i] * std::norm(data_[i]);
    const double inv_n = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) data_[i] *= inv_n;
    fftw_execute(static_cast<fftw_plan>(backward_));
    // Parseval: sum_x |psi|^2 dV = (dV / N) sum_k |psi_k|^2.
    return kinetic_ * weights_[0] * inv_n * s;
}

void SpectralEngine::fourier_multiply(std::span<const double> m) {
    fftw_execute(static_cast<fftw_plan>(forward_));
    const double inv_n = 1.0 / static_cast<double>(size_);
    for (std::size_t i = 0; i < size_; ++i) data_[i] *= m[i] * inv_n;
    fftw_execute(static_cast<fftw_plan>(backward_));
}

}  // namespace nffd::detail
