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

#include <cmath>
#include <numbers>

#include "engines.hpp"
#include "nffd/errors.hpp"

namespace nffd::detail {

namespace {

// Thomas factorization of (I + M) for tridiagonal M = (a, b - 1, c) given in full.
Tridiagonal factor(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c) {
    const std::size_t n = b.size();
    Tridiagonal t;
    t.sub.assign(a.begin(), a.end());
    t.inv.resize(n);
    t.sup_p.resize(n);
    cplx prev{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const cplx denom = b[i] - (i > 0 ? a[i] * prev : cplx{});
        t.inv[i] = 1.0 / denom;
        t.sup_p[i] = i + 1 < n ? c[i] * t.inv[i] : cplx{};
        prev = t.sup_p[i];
    }
    return t;
}

}  // namespace

CylindricalEngine::CylindricalEngine(const Grid& grid, double kinetic, cplx step) {
    if (grid.coords() != Coordinates::reduced_cylindrical)
        throw ContractError("CylindricalEngine: needs a reduced-cylindrical grid");
    const Axis& r = grid.axis(0);
    const Axis& z = grid.axis(1);
    nr_ = r.size;
    nz_ = z.size;
    hr_ = r.step;
    hz_ = z.step;
    r_.resize(nr_);
    up_.resize(nr_);
    down_.resize(nr_);
    for (std::size_t i = 0; i < nr_; ++i) {
        r_[i] = r.node(i);
        up_[i] = (r_[i] + 0.5 * hr_) / r_[i];
        down_[i] = i == 0 ? 0.0 : (r_[i] - 0.5 * hr_) / r_[i];
    }
    sr_ = 0.5 * step * kinetic / (hr_ * hr_);
    sz_ = 0.5 * step * kinetic / (hz_ * hz_);

    // Left-hand operator I - (step/2) H with H = -c L, i.e. I + s M.
    {
        std::vector<cplx> a(nr_), b(nr_), c(nr_);
        for (std::size_t i = 0; i < nr_; ++i) {
            a[i] = sr_ * down_[i];
            b[i] = 1.0 - sr_ * (up_[i] + down_[i]);
            c[i] = sr_ * up_[i];
        }
        tr_ = factor(a, b, c);
    }
    {
        std::vector<cplx> a(nz_, sz_), b(nz_, 1.0 - 2.0 * sz_), c(nz_, sz_);
        tz_ = factor(a, b, c);
    }

    weights_.resize(nr_ * nz_);
    const double cell = 2.0 * std::numbers::pi * hr_ * hz_;
    for (std::size_t i = 0; i < nr_; ++i)
        for (std::size_t j = 0; j < nz_; ++j) weights_[i * nz_ + j] = cell * r_[i];
    psi_.assign(nr_ * nz_, cplx{});
    work_.assign(nr_ * nz_, cplx{});
}

void CylindricalEngine::load(const Wavefunction& phi) { psi_ = internal(phi); }

std::vector<cplx> CylindricalEngine::internal(const Wavefunction& phi) const {
    if (phi.size() != nr_ * nz_) throw ContractError("CylindricalEngine: grid mismatch");
    std::vector<cplx> out(phi.size());
    const auto v = phi.values();
    for (std::size_t i = 0; i < nr_; ++i) {
        const double inv_r = 1.0 / r_[i];
        for (std::size_t j = 0; j < nz_; ++j) out[i * nz_ + j] = v[i * nz_ + j] * inv_r;
    }
    return out;
}

void CylindricalEngine::store(Wavefunction& phi) const {
    auto v = phi.values();
    for (std::size_t i = 0; i < nr_; ++i)
        for (std::size_t j = 0; j < nz_; ++j) v[i * nz_ + j] = psi_[i * nz_ + j] * r_[i];
}

void CylindricalEngine::kinetic_step() {
    // Axial direction: one independent system per radial row.
    for (std::size_t i = 0; i < nr_; ++i) {
        cplx* p = psi_.data() + i * nz_;
        cplx* d = work_.data() + i * nz_;
        cplx left{};
        for (std::size_t j = 0; j < nz_; ++j) {
            const cplx right = j + 1 < nz_ ? p[j + 1] : cplx{};
            const cplx rhs = p[j] - sz_ * (left - 2.0 * p[j] + right);
            left = p[j];
            d[j] = (rhs - (j > 0 ? tz_.sub[j] * d[j - 1] : cplx{})) * tz_.inv[j];
        }
        p[nz_ - 1] = d[nz_ - 1];
        for (std::size_t j = nz_ - 1; j-- > 0;) p[j] = d[j] - tz_.sup_p[j] * p[j + 1];
    }

    // Radial direction, swept row by row with the axial index innermost.
    for (std::size_t i = 0; i < nr_; ++i) {
        const cplx A = sr_ * down_[i];
        const cplx B = -sr_ * (up_[i] + down_[i]);
        const cplx C = sr_ * up_[i];
        const cplx* pm = i > 0 ? psi_.data() + (i - 1) * nz_ : nullptr;
        const cplx* p0 = psi_.data() + i * nz_;
        const cplx* pp = i + 1 < nr_ ? psi_.data() + (i + 1) * nz_ : nullptr;
        cplx* d = work_.data() + i * nz_;
        const cplx* dm = i > 0 ? work_.data() + (i - 1) * nz_ : nullptr;
        const cplx sub = tr_.sub[i];
        const cplx inv = tr_.inv[i];
        for (std::size_t j = 0; j < nz_; ++j) {
            cplx mpsi = B * p0[j];
            if (pm) mpsi += A * pm[j];
            if (pp) mpsi += C * pp[j];
            cplx rhs = p0[j] - mpsi;
            if (dm) rhs -= sub * dm[j];
            d[j] = rhs * inv;
        }
    }
    {
        cplx* p = psi_.data() + (nr_ - 1) * nz_;
        const cplx* d = work_.data() + (nr_ - 1) * nz_;
        for (std::size_t j = 0; j < nz_; ++j) p[j] = d[j];
    }
    for (std::size_t i = nr_ - 1; i-- > 0;) {
        cplx* p = psi_.data() + i * nz_;
        const cplx* pp = psi_.data() + (i + 1) * nz_;
        const cplx* d = work_.data() + i * nz_;
        const cplx cp = tr_.sup_p[i];
        for (std::size_t j = 0; j < nz_; ++j) p[j] = d[j] - cp * pp[j];
    }
}

void CylindricalEngine::apply_kinetic(const Grid& grid, double kinetic, std::span<const cplx> psi,
                                      std::span<cplx> out) {
    const Axis& r = grid.axis(0);
    const Axis& z = grid.axis(1);
    const std::size_t nr = r.size, nz = z.size;
    const double hr2 = r.step * r.step, hz2 = z.step * z.step;
    for (std::size_t i = 0; i < nr; ++i) {
        const double ri = r.node(i);
        const double up = (ri + 0.5 * r.step) / ri;
        const double down = i == 0 ? 0.0 : (ri - 0.5 * r.step) / ri;
        for (std::size_t j = 0; j < nz; ++j) {
            const cplx p0 = psi[i * nz + j];
            const cplx pm = i > 0 ? psi[(i - 1) * nz + j] : cplx{};
            const cplx pp = i + 1 < nr ? psi[(i + 1) * nz + j] : cplx{};
            const cplx zm = j > 0 ? psi[i * nz + j - 1] : cplx{};
            const cplx zp = j + 1 < nz ? psi[i * nz + j + 1] : cplx{};
            const cplx lr = (down * pm - (up + down) * p0 + up * pp) / hr2;
            const cplx lz = (zm - 2.0 * p0 + zp) / hz2;
            out[i * nz + j] = -kinetic * (lr + lz);
        }
    }
}

}  // namespace nffd::detail
