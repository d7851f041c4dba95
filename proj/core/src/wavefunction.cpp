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

#include "nffd/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nffd/errors.hpp"

namespace nffd {

std::string_view to_string(Scaling s) {
    return s == Scaling::nffd ? "nffd" : "lattice";
}

Scaling scaling_from_string(std::string_view s) {
    if (s == "nffd") return Scaling::nffd;
    if (s == "lattice") return Scaling::lattice;
    throw ConfigError("unknown scaling: " + std::string(s));
}

Wavefunction::Wavefunction(Grid grid, Scaling scaling)
    : grid_(std::move(grid)), scaling_(scaling), values_(grid_.size()) {}

Wavefunction::Wavefunction(Grid grid, Scaling scaling, std::vector<value_type> values)
    : grid_(std::move(grid)), scaling_(scaling), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw ContractError("Wavefunction: value count does not match the grid");
}

Wavefunction Wavefunction::from_psi(Grid grid, Scaling scaling,
                                    const std::function<value_type(std::span<const double>)>& f) {
    Wavefunction wf(std::move(grid), scaling);
    const auto& axes = wf.grid_.axes();
    const std::size_t rank = axes.size();
    std::vector<std::size_t> idx(rank, 0);
    std::vector<double> x(rank);
    const bool reduced = wf.coords() == Coordinates::reduced_cylindrical;
    for (std::size_t n = 0; n < wf.size(); ++n) {
        for (std::size_t d = 0; d < rank; ++d) x[d] = axes[d].node(idx[d]);
        value_type v = f(x);
        if (reduced) v *= x[0];
        wf.values_[n] = v;
        for (std::size_t d = rank; d-- > 0;) {
            if (++idx[d] < axes[d].size) break;
            idx[d] = 0;
        }
    }
    return wf;
}

Wavefunction::value_type Wavefunction::psi(std::size_t i) const {
    if (coords() != Coordinates::reduced_cylindrical) return values_[i];
    const auto& r = grid_.axis(0);
    const std::size_t nz = grid_.axis(1).size;
    return values_[i] / r.node(i / nz);
}

double Wavefunction::norm() const {
    const auto& w = grid_.weights();
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += w[i] * std::norm(values_[i]);
    return std::sqrt(s);
}

void Wavefunction::normalize() {
    const double n = norm();
    if (!(n > 0.0)) throw ContractError("Wavefunction::normalize: zero field");
    for (auto& v : values_) v /= n;
}

double Wavefunction::expectation(std::size_t axis) const {
    const auto& axes = grid_.axes();
    if (axis >= axes.size()) throw ContractError("Wavefunction::expectation: bad axis");
    std::size_t stride = 1;
    for (std::size_t d = axis + 1; d < axes.size(); ++d) stride *= axes[d].size;
    const auto& w = grid_.weights();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double p = w[i] * std::norm(values_[i]);
        num += p * axes[axis].node((i / stride) % axes[axis].size);
        den += p;
    }
    return num / den;
}

double Wavefunction::boundary_fraction() const {
    const auto& axes = grid_.axes();
    const std::size_t rank = axes.size();
    const bool reduced = coords() == Coordinates::reduced_cylindrical;
    std::vector<std::size_t> idx(rank, 0);
    double peak = 0.0, edge = 0.0;
    for (std::size_t n = 0; n < values_.size(); ++n) {
        const double m = std::abs(psi(n));
        peak = std::max(peak, m);
        bool on_edge = false;
        for (std::size_t d = 0; d < rank; ++d) {
            const bool low = idx[d] == 0 && !(reduced && d == 0);
            if (low || idx[d] + 1 == axes[d].size) on_edge = true;
        }
        if (on_edge) edge = std::max(edge, m);
        for (std::size_t d = rank; d-- > 0;) {
            if (++idx[d] < axes[d].size) break;
            idx[d] = 0;
        }
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

void Wavefunction::fix_phase() {
    if (values_.empty()) return;
    const auto it = std::max_element(values_.begin(), values_.end(),
                                     [](auto a, auto b) { return std::norm(a) < std::norm(b); });
    if (std::abs(*it) == 0.0) return;
    const value_type phase = std::conj(*it) / std::abs(*it);
    for (auto& v : values_) v *= phase;
}

std::complex<double> inner_product(const Wavefunction& a, const Wavefunction& b) {
    if (!(a.grid() == b.grid()))
        throw ContractError("inner_product: wavefunctions live on different grids");
    const auto& w = a.grid().weights();
    const auto va = a.values();
    const auto vb = b.values();
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        const auto p = std::conj(va[i]) * vb[i];
        re += w[i] * p.real();
        im += w[i] * p.imag();
    }
    return {re, im};
}

Overlap fidelity(const Wavefunction& psi, const Wavefunction& ref) {
    const auto f = inner_product(psi, ref);
    return {f, std::abs(f)};
}

}  // namespace nffd
