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
#include <filesystem>
#include <span>
#include <vector>

#include "nffd/grid.hpp"
#include "nffd/units.hpp"

namespace nffd {

/// Points are in units of lambda_F; the screen is the plane z = 0, light arrives
/// from z < 0.

/// Circular aperture of radius `radius` (units of lambda_F).
struct ApertureConfig {
    double radius = 1.5;

    /// a / lambda_F.
    double fresnel_number() const { return radius; }
    /// False below the near-field regime (Fresnel number < 1); callers may warn.
    bool near_field() const { return radius >= 1.0; }
};

/// Gauss-Legendre settings for the aperture integral.
///
/// The order is raised by 3/2 per round starting from `order` until two successive
/// rounds agree to `rel_tolerance` (relative to the field magnitude, floored at
/// `abs_floor`). Exceeding `max_order` raises AccuracyError.
struct QuadratureSettings {
    int order = 12;
    int max_order = 256;
    double rel_tolerance = 1e-11;
    double abs_floor = 1e-3;
};

/// Closest field point the quadrature accepts; the integrand is near-singular closer in.
inline constexpr double min_field_z = 0.1;

/// Rayleigh-Sommerfeld field behind the aperture, in units of the incident amplitude E0:
/// (1/2pi) \iint e^{ikr}/r (z/r)(1/r - ik) dx'dy' over the disk, k = 2 pi.
std::complex<double> rs_field(const Vec3& p, const ApertureConfig& aperture,
                              const QuadratureSettings& quad = {});

/// U_F / U0 = -|E|^2 / E0^2.
double trap_potential(const Vec3& p, const ApertureConfig& aperture,
                      const QuadratureSettings& quad = {});
std::vector<double> trap_potential(std::span<const Vec3> points, const ApertureConfig& aperture,
                                   const QuadratureSettings& quad = {});

/// Axial trap characterisation (all values dimensionless: lambda_F, U0, tau_F).
struct TrapProfile {
    double aperture = 0.0;      // a / lambda_F
    double z_m = 0.0;           // axial position of the potential minimum
    double depth_at_min = 0.0;  // U_F(0, 0, z_m) / U0, negative
    double curvature_zz = 0.0;  // d^2 U / dz^2 at z_m
    double curvature_rr = 0.0;  // d^2 U / drho^2 at (0, z_m); reported only
    double omega_z = 0.0;       // sqrt(2 alpha U'') in 1/tau_F
};

/// Locates the on-axis potential minimum for a / lambda_F in [1, 4].
TrapProfile find_trap_minimum(const ApertureConfig& aperture, const PhysicalParams& params);

/// (z_fin - z_ini) / (alpha^{3/4} U''(z_fin)^{1/4}), in units of tau_F.
double adiabatic_time_step1(double z_ini, double z_fin, double curvature_fin, double alpha);
/// Same estimate from two trap profiles, in seconds.
double adiabatic_time_step1(const TrapProfile& ini, const TrapProfile& fin,
                            const PhysicalParams& params);

/// U_F / U0 sampled on a (rho, z) node set for a sequence of aperture radii.
///
/// Values are stored per aperture sample on exactly the requested nodes; between
/// apertures the table interpolates with a cubic (Catmull-Rom) rule, and between
/// nodes with a bicubic rule. Points closer to the screen than `min_field_z` take the
/// value at `min_field_z`.
class TrapTable {
public:
    TrapTable() = default;

    /// Builds the table for apertures `radii` (strictly increasing or a single value).
    /// Work is spread over `threads` workers (0 = hardware concurrency); results do not
    /// depend on the thread count.
    static TrapTable build(Axis rho, Axis z, std::vector<double> radii,
                           const QuadratureSettings& quad = {}, unsigned threads = 0);

    /// As build(), but first looks for a previously saved table in `cache_dir`.
    static TrapTable build_cached(const std::filesystem::path& cache_dir, Axis rho, Axis z,
                                  std::vector<double> radii, const QuadratureSettings& quad = {});

    const Axis& rho() const { return rho_; }
    const Axis& z() const { return z_; }
    const std::vector<double>& radii() const { return radii_; }
    std::span<const double> sample(std::size_t k) const;

    /// Node values (row-major, z contiguous) at aperture radius `a`.
    void values_at(double a, std::span<double> out) const;
    std::vector<double> values_at(double a) const;

    /// Off-node evaluation (bicubic in rho, z; cubic in a).
    double interpolate(double a, double rho, double z) const;

    void save(const std::filesystem::path& file) const;
    static TrapTable load(const std::filesystem::path& file);

private:
    Axis rho_;
    Axis z_;
    std::vector<double> radii_;
    std::vector<double> values_;  // [sample][rho][z]
};

}  // namespace nffd
