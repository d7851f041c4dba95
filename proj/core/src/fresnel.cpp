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

#include "nffd/fresnel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "nffd/errors.hpp"
#include "nffd/quadrature.hpp"

namespace nffd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One fixed-order evaluation of the aperture integral in polar coordinates about the
// aperture centre. The angular half-range [0, pi] is doubled by the phi -> -phi symmetry.
std::complex<double> rs_fixed_order(double rho, double z, double a, int order) {
    const auto& radial = gauss_legendre(order);
    const double k = kTwoPi;
    const double half_a = 0.5 * a;
    double re = 0.0, im = 0.0;

    if (rho == 0.0) {
        for (int i = 0; i < order; ++i) {
            const double rp = half_a * (radial.nodes[i] + 1.0);
            const double r2 = z * z + rp * rp;
            const double r = std::sqrt(r2);
            const double c = std::cos(k * r), s = std::sin(k * r);
            const double w = radial.weights[i] * half_a * rp * z / r2;
            re += w * (c / r + k * s);
            im += w * (s / r - k * c);
        }
        return {re, im};
    }

    const auto& angular = gauss_legendre(order);
    const double half_pi = 0.5 * std::numbers::pi;
    const double base = z * z + rho * rho;
    for (int i = 0; i < order; ++i) {
        const double rp = half_a * (radial.nodes[i] + 1.0);
        const double wr = radial.weights[i] * half_a * rp;
        const double a2 = base + rp * rp;
        const double b = 2.0 * rho * rp;
        double sre = 0.0, sim = 0.0;
        for (int j = 0; j < order; ++j) {
            const double phi = half_pi * (angular.nodes[j] + 1.0);
            const double r2 = a2 - b * std::cos(phi);
            const double r = std::sqrt(r2);
            const double c = std::cos(k * r), s = std::sin(k * r);
            const double w = angular.weights[j] / r2;
            sre += w * (c / r + k * s);
            sim += w * (s / r - k * c);
        }
        re += wr * sre;
        im += wr * sim;
    }
    // (1/pi) * (pi/2 Jacobian of phi) * z
    const double scale = 0.5 * z;
    return {re * scale, im * scale};
}

int next_order(int n) { return std::max(n + 1, (3 * n) / 2); }

}  // namespace

std::complex<double> rs_field(const Vec3& p, const ApertureConfig& aperture,
                              const QuadratureSettings& quad) {
    if (!(p.z > 0.0)) throw DomainError("rs_field: field point must lie in front of the screen");
    if (p.z < min_field_z)
        throw DomainError("rs_field: field point closer than 0.1 lambda_F to the screen");
    if (quad.order < 8) throw DomainError("rs_field: quadrature order must be >= 8");
    if (!(aperture.radius > 0.0)) throw DomainError("rs_field: aperture radius must be positive");

    const double rho = std::hypot(p.x, p.y);
    int n = quad.order;
    std::complex<double> prev = rs_fixed_order(rho, p.z, aperture.radius, n);
    double estimate = 0.0;
    while (true) {
        const int next = next_order(n);
        if (next > quad.max_order) {
            std::ostringstream msg;
            msg << "rs_field: quadrature did not converge (estimate " << estimate << ")";
            throw AccuracyError(msg.str(), estimate);
        }
        const std::complex<double> cur = rs_fixed_order(rho, p.z, aperture.radius, next);
        estimate = std::abs(cur - prev);
        if (estimate <= quad.rel_tolerance * std::max(std::abs(cur), quad.abs_floor)) return cur;
        prev = cur;
        n = next;
    }
}

double trap_potential(const Vec3& p, const ApertureConfig& aperture,
                      const QuadratureSettings& quad) {
    return -std::norm(rs_field(p, aperture, quad));
}

std::vector<double> trap_potential(std::span<const Vec3> points, const ApertureConfig& aperture,
                                   const QuadratureSettings& quad) {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(trap_potential(p, aperture, quad));
    return out;
}

TrapProfile find_trap_minimum(const ApertureConfig& aperture, const PhysicalParams& params) {
    const double a = aperture.radius;
    if (a < 1.0 - 1e-12 || a > 4.0 + 1e-12)
        throw DomainError("find_trap_minimum: a / lambda_F must lie in [1, 4]");

    const QuadratureSettings quad{16, 512, 1e-13, 1.0};
    auto axial = [&](double z) { return trap_potential({0.0, 0.0, z}, aperture, quad); };

    // Coarse scan for the global axial minimum.
    constexpr int kScan = 128;
    const double z_lo = 0.25;
    const double z_hi = a * a + 2.0;
    const double dz = (z_hi - z_lo) / (kScan - 1);
    int best = 0;
    double best_u = axial(z_lo);
    for (int i = 1; i < kScan; ++i) {
        const double u = axial(z_lo + dz * i);
        if (u < best_u) best_u = u, best = i;
    }
    if (best == 0 || best == kScan - 1)
        throw GeometryError("find_trap_minimum: no interior minimum in the scan range");

    // Golden-section refinement inside the bracketing cells.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = z_lo + dz * (best - 1);
    double hi = z_lo + dz * (best + 1);
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = axial(x1), f2 = axial(x2);
    while (hi - lo > 1e-7) {
        if (f1 < f2) {
            hi = x2, x2 = x1, f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = axial(x1);
        } else {
            lo = x1, x1 = x2, f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = axial(x2);
        }
    }

    TrapProfile prof;
    prof.aperture = a;
    prof.z_m = 0.5 * (lo + hi);
    prof.depth_at_min = axial(prof.z_m);

    const double h = 1e-3;
    auto second_diff = [&](double step) {
        return (axial(prof.z_m + step) - 2.0 * prof.depth_at_min + axial(prof.z_m - step)) /
               (step * step);
    };
    const double dzz_h = second_diff(h), dzz_h2 = second_diff(0.5 * h);
    prof.curvature_zz = (4.0 * dzz_h2 - dzz_h) / 3.0;

    // U is even in rho, so U(h) - U(0) = U_rr h^2 / 2 + O(h^4).
    auto radial_diff = [&](double step) {
        return 2.0 * (trap_potential({step, 0.0, prof.z_m}, aperture, quad) - prof.depth_at_min) /
               (step * step);
    };
    const double drr_h = radial_diff(h), drr_h2 = radial_diff(0.5 * h);
    prof.curvature_rr = (4.0 * drr_h2 - drr_h) / 3.0;

    if (!(prof.depth_at_min < 0.0) || !(prof.curvature_zz > 0.0))
        throw GeometryError("find_trap_minimum: stationary point is not a minimum");
    prof.omega_z = std::sqrt(2.0 * params.alpha * prof.curvature_zz);
    return prof;
}

double adiabatic_time_step1(double z_ini, double z_fin, double curvature_fin, double alpha) {
    if (z_fin < z_ini) throw DomainError("adiabatic_time_step1: need z_fin >= z_ini");
    if (!(curvature_fin > 0.0) || !(alpha > 0.0))
        throw DomainError("adiabatic_time_step1: curvature and alpha must be positive");
    return (z_fin - z_ini) / (std::pow(alpha, 0.75) * std::pow(curvature_fin, 0.25));
}

double adiabatic_time_step1(const TrapProfile& ini, const TrapProfile& fin,
                            const PhysicalParams& params) {
    return adiabatic_time_step1(ini.z_m, fin.z_m, fin.curvature_zz, params.alpha) * params.tau_F;
}

// ---------------------------------------------------------------------------
// TrapTable

namespace {

// Cubic Lagrange weights for nodes at offsets -1, 0, 1, 2 and fractional position t.
std::array<double, 4> lagrange4(double t) {
    return {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
            -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
}

constexpr char kTableMagic[8] = {'N', 'F', 'F', 'D', 'T', 'T', '0', '1'};

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw ConfigError("TrapTable::load: truncated file");
    return v;
}

}  // namespace

TrapTable TrapTable::build(Axis rho, Axis z, std::vector<double> radii,
                           const QuadratureSettings& quad, unsigned threads) {
    if (radii.empty()) throw ConfigError("TrapTable: need at least one aperture radius");
    for (std::size_t k = 1; k < radii.size(); ++k)
        if (!(radii[k] > radii[k - 1])) throw ConfigError("TrapTable: radii must increase");
    if (rho.origin < 0.0) throw ConfigError("TrapTable: rho nodes must be non-negative");

    TrapTable t;
    t.rho_ = rho;
    t.z_ = z;
    t.radii_ = std::move(radii);
    const std::size_t plane = rho.size * z.size;
    t.values_.assign(t.radii_.size() * plane, 0.0);

    const std::size_t rows = t.radii_.size() * rho.size;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t row = next++; row < rows; row = next++) {
            const std::size_t k = row / rho.size, i = row % rho.size;
            const ApertureConfig ap{t.radii_[k]};
            double* out = t.values_.data() + k * plane + i * z.size;
            for (std::size_t j = 0; j < z.size; ++j) {
                const double zz = std::max(z.node(j), min_field_z);
                out[j] = trap_potential({rho.node(i), 0.0, zz}, ap, quad);
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    return t;
}

TrapTable TrapTable::build_cached(const std::filesystem::path& cache_dir, Axis rho, Axis z,
                                  std::vector<double> radii, const QuadratureSettings& quad) {
    std::uint64_t h = fnv1a(&rho, sizeof rho);
    h = fnv1a(&z, sizeof z, h);
    h = fnv1a(radii.data(), radii.size() * sizeof(double), h);
    h = fnv1a(&quad, sizeof quad, h);
    std::ostringstream name;
    name << "trap_table_" << std::hex << h << ".bin";
    const auto file = cache_dir / name.str();
    if (std::filesystem::exists(file)) {
        try {
            TrapTable t = load(file);
            if (t.rho_ == rho && t.z_ == z && t.radii_ == radii) return t;
        } catch (const std::exception&) {
            // Corrupt or stale cache entry; rebuild below.
        }
    }
    TrapTable t = build(rho, z, std::move(radii), quad);
    std::filesystem::create_directories(cache_dir);
    const auto tmp = file.string() + ".tmp";
    t.save(tmp);
    std::filesystem::rename(tmp, file);
    return t;
}

std::span<const double> TrapTable::sample(std::size_t k) const {
    const std::size_t plane = rho_.size * z_.size;
    return {values_.data() + k * plane, plane};
}

void TrapTable::values_at(double a, std::span<double> out) const {
    const std::size_t plane = rho_.size * z_.size;
    if (out.size() != plane) throw ContractError("TrapTable::values_at: output size mismatch");
    const std::size_t n = radii_.size();
    if (n == 1) {
        std::copy_n(values_.begin(), plane, out.begin());
        return;
    }
    const double tol = 1e-12 * (radii_.back() - radii_.front());
    if (a < radii_.front() - tol || a > radii_.back() + tol)
        throw DomainError("TrapTable: aperture radius outside the tabulated range");
    a = std::clamp(a, radii_.front(), radii_.back());

    std::size_t k = std::upper_bound(radii_.begin(), radii_.end(), a) - radii_.begin();
    k = std::clamp<std::size_t>(k, 1, n - 1) - 1;  // a in [radii[k], radii[k+1]]
    const double a0 = radii_[k], a1 = radii_[k + 1], h = a1 - a0;
    const double t = (a - a0) / h;
    if (t == 0.0) {
        std::copy_n(values_.begin() + k * plane, plane, out.begin());
        return;
    }
    if (t == 1.0) {
        std::copy_n(values_.begin() + (k + 1) * plane, plane, out.begin());
        return;
    }

    // Cubic Hermite with centred finite-difference tangents (one-sided at the ends).
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    const std::size_t km = k == 0 ? 0 : k - 1;
    const std::size_t kp = std::min(k + 2, n - 1);
    const double s0 = h / (radii_[k + 1] - radii_[km]);
    const double s1 = h / (radii_[kp] - radii_[k]);
    const double* fm = values_.data() + km * plane;
    const double* f0 = values_.data() + k * plane;
    const double* f1 = values_.data() + (k + 1) * plane;
    const double* fp = values_.data() + kp * plane;
    for (std::size_t i = 0; i < plane; ++i) {
        const double m0 = (f1[i] - fm[i]) * s0;
        const double m1 = (fp[i] - f0[i]) * s1;
        out[i] = h00 * f0[i] + h10 * m0 + h01 * f1[i] + h11 * m1;
    }
}

std::vector<double> TrapTable::values_at(double a) const {
    std::vector<double> out(rho_.size * z_.size);
    values_at(a, out);
    return out;
}

double TrapTable::interpolate(double a, double rho, double z) const {
    rho = std::abs(rho);
    z = std::max(z, min_field_z);
    const double zlo = z_.node(0), zhi = z_.back();
    const double rhi = rho_.back();
    const double eps = 1e-12;
    if (z < zlo - eps || z > zhi + eps || rho > rhi + eps)
        throw DomainError("TrapTable::interpolate: point outside the tabulated region");

    // Stencil indices; rho mirrors through the axis, z clamps at the ends.
    auto locate = [](const Axis& ax, double x) {
        double u = (x - ax.origin) / ax.step;
        long i = static_cast<long>(std::floor(u));
        i = std::clamp<long>(i, 0, static_cast<long>(ax.size) - 2);
        return std::pair{i, u - static_cast<double>(i)};
    };
    auto rho_index = [&](long i) -> std::size_t {
        if (i >= 0) return static_cast<std::size_t>(std::min<long>(i, rho_.size - 1));
        // Mirror image -(origin + i h) of a node with negative index.
        const double pos = -(rho_.origin + static_cast<double>(i) * rho_.step);
        const long m = std::lround((pos - rho_.origin) / rho_.step);
        return static_cast<std::size_t>(std::clamp<long>(m, 0, rho_.size - 1));
    };
    auto z_index = [&](long j) -> std::size_t {
        return static_cast<std::size_t>(std::clamp<long>(j, 0, z_.size - 1));
    };

    const auto [ir, tr] = locate(rho_, rho);
    const auto [jz, tz] = locate(z_, z);
    const auto wr = lagrange4(tr);
    const auto wz = lagrange4(tz);

    // Aperture interpolation restricted to the 4x4 patch around the point.
    std::array<std::array<double, 4>, 4> patch{};
    const std::size_t n = radii_.size();
    if (n == 1) {
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q)
                patch[p][q] = values_[rho_index(ir - 1 + p) * z_.size + z_index(jz - 1 + q)];
    } else {
        const double tol = 1e-12 * (radii_.back() - radii_.front());
        if (a < radii_.front() - tol || a > radii_.back() + tol)
            throw DomainError("TrapTable: aperture radius outside the tabulated range");
        a = std::clamp(a, radii_.front(), radii_.back());
        std::size_t k = std::upper_bound(radii_.begin(), radii_.end(), a) - radii_.begin();
        k = std::clamp<std::size_t>(k, 1, n - 1) - 1;
        const double h = radii_[k + 1] - radii_[k];
        const double t = (a - radii_[k]) / h;
        const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        const std::size_t km = k == 0 ? 0 : k - 1;
        const std::size_t kp = std::min(k + 2, n - 1);
        const double s0 = h / (radii_[k + 1] - radii_[km]);
        const double s1 = h / (radii_[kp] - radii_[k]);
        const std::size_t plane = rho_.size * z_.size;
        for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
                const std::size_t idx = rho_index(ir - 1 + p) * z_.size + z_index(jz - 1 + q);
                const double fm = values_[km * plane + idx], f0 = values_[k * plane + idx];
                const double f1 = values_[(k + 1) * plane + idx], fp = values_[kp * plane + idx];
                patch[p][q] = h00 * f0 + h10 * (f1 - fm) * s0 + h01 * f1 + h11 * (fp - f0) * s1;
            }
    }
    double result = 0.0;
    for (int p = 0; p < 4; ++p) {
        double row = 0.0;
        for (int q = 0; q < 4; ++q) row += wz[q] * patch[p][q];
        result += wr[p] * row;
    }
    return result;
}

void TrapTable::save(const std::filesystem::path& file) const {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw ConfigError("TrapTable::save: cannot open " + file.string());
    os.write(kTableMagic, sizeof kTableMagic);
    for (const Axis* ax : {&rho_, &z_}) {
        put(os, ax->origin);
        put(os, ax->step);
        put(os, static_cast<std::uint64_t>(ax->size));
    }
    put(os, static_cast<std::uint64_t>(radii_.size()));
    os.write(reinterpret_cast<const char*>(radii_.data()),
             static_cast<std::streamsize>(radii_.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(values_.data()),
             static_cast<std::streamsize>(values_.size() * sizeof(double)));
    if (!os) throw ConfigError("TrapTable::save: write failed");
}

TrapTable TrapTable::load(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw ConfigError("TrapTable::load: cannot open " + file.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kTableMagic, sizeof magic) != 0)
        throw ConfigError("TrapTable::load: bad magic");
    TrapTable t;
    for (Axis* ax : {&t.rho_, &t.z_}) {
        ax->origin = get<double>(is);
        ax->step = get<double>(is);
        ax->size = static_cast<std::size_t>(get<std::uint64_t>(is));
    }
    const auto n = static_cast<std::size_t>(get<std::uint64_t>(is));
    t.radii_.resize(n);
    is.read(reinterpret_cast<char*>(t.radii_.data()), static_cast<std::streamsize>(n * sizeof(double)));
    t.values_.resize(n * t.rho_.size * t.z_.size);
    is.read(reinterpret_cast<char*>(t.values_.data()),
            static_cast<std::streamsize>(t.values_.size() * sizeof(double)));
    if (!is) throw ConfigError("TrapTable::load: truncated file");
    return t;
}

}  // namespace nffd
