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

#include "nffd/grid.hpp"

#include <numbers>
#include <string>

#include "nffd/errors.hpp"

namespace nffd {

Axis Axis::spanning(double lo, double hi, std::size_t size) {
    if (size < 2 || !(hi > lo)) throw ConfigError("Axis::spanning: need size >= 2 and hi > lo");
    return {lo, (hi - lo) / static_cast<double>(size - 1), size};
}

Axis Axis::cell_centred(double lo, double hi, std::size_t size) {
    if (size < 1 || !(hi > lo)) throw ConfigError("Axis::cell_centred: need size >= 1 and hi > lo");
    const double h = (hi - lo) / static_cast<double>(size);
    return {lo + 0.5 * h, h, size};
}

Axis Axis::periodic(double lo, double hi, std::size_t size) {
    if (size < 2 || !(hi > lo)) throw ConfigError("Axis::periodic: need size >= 2 and hi > lo");
    return {lo, (hi - lo) / static_cast<double>(size), size};
}

std::string_view to_string(Coordinates c) {
    switch (c) {
        case Coordinates::reduced_cylindrical: return "reduced_cylindrical";
        case Coordinates::cartesian2d: return "cartesian2d";
        case Coordinates::cartesian3d: return "cartesian3d";
    }
    return "unknown";
}

Coordinates coordinates_from_string(std::string_view s) {
    if (s == "reduced_cylindrical") return Coordinates::reduced_cylindrical;
    if (s == "cartesian2d") return Coordinates::cartesian2d;
    if (s == "cartesian3d") return Coordinates::cartesian3d;
    throw ConfigError("unknown coordinate system: " + std::string(s));
}

Grid::Grid(Coordinates coords, std::vector<Axis> axes) : coords_(coords), axes_(std::move(axes)) {
    const std::size_t want = coords == Coordinates::cartesian3d ? 3 : 2;
    if (axes_.size() != want) throw ConfigError("Grid: wrong number of axes");
    for (const auto& a : axes_)
        if (a.size == 0 || !(a.step > 0)) throw ConfigError("Grid: empty axis or non-positive step");
    if (coords == Coordinates::reduced_cylindrical && !(axes_[0].origin > 0))
        throw ConfigError("Grid: radial nodes must lie strictly off the axis");

    weights_.assign(size(), 1.0);
    double cell = 1.0;
    for (const auto& a : axes_) cell *= a.step;
    if (coords == Coordinates::reduced_cylindrical) {
        const auto& r = axes_[0];
        const std::size_t nz = axes_[1].size;
        for (std::size_t i = 0; i < r.size; ++i)
            for (std::size_t j = 0; j < nz; ++j)
                weights_[i * nz + j] = 2.0 * std::numbers::pi * cell / r.node(i);
    } else {
        for (auto& w : weights_) w = cell;
    }
}

Grid Grid::reduced_cylindrical(double r_max, std::size_t nr, Axis axial) {
    return Grid(Coordinates::reduced_cylindrical, {Axis::cell_centred(0.0, r_max, nr), axial});
}

Grid Grid::cartesian2d(Axis x, Axis z) { return Grid(Coordinates::cartesian2d, {x, z}); }

Grid Grid::cartesian3d(Axis x, Axis y, Axis z) {
    return Grid(Coordinates::cartesian3d, {x, y, z});
}

Measure Grid::measure() const {
    return coords_ == Coordinates::reduced_cylindrical ? Measure::reduced_cylindrical
                                                       : Measure::flat;
}

std::size_t Grid::size() const {
    std::size_t n = axes_.empty() ? 0 : 1;
    for (const auto& a : axes_) n *= a.size;
    return n;
}

int Grid::physical_dimension() const {
    switch (coords_) {
        case Coordinates::reduced_cylindrical: return 3;
        case Coordinates::cartesian2d: return 2;
        case Coordinates::cartesian3d: return 3;
    }
    return 0;
}

}  // namespace nffd
