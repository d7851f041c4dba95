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

#include <cstddef>
#include <string_view>
#include <vector>

namespace nffd {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Uniformly spaced nodes origin + i * step, i in [0, size).
struct Axis {
    double origin = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    double node(std::size_t i) const { return origin + static_cast<double>(i) * step; }
    double back() const { return node(size - 1); }

    /// `size` nodes spanning [lo, hi] inclusive.
    static Axis spanning(double lo, double hi, std::size_t size);
    /// `size` cell-centred nodes on [lo, hi]: lo + (i + 1/2) h.
    static Axis cell_centred(double lo, double hi, std::size_t size);
    /// `size` nodes of a periodic interval [lo, hi) (the node at hi is the image of lo).
    static Axis periodic(double lo, double hi, std::size_t size);

    friend bool operator==(const Axis&, const Axis&) = default;
};

enum class Coordinates {
    reduced_cylindrical,  // axes (r, axial); stored field is phi = r psi
    cartesian2d,          // axes (x, z)
    cartesian3d,          // axes (x, y, z)
};

std::string_view to_string(Coordinates c);
Coordinates coordinates_from_string(std::string_view s);

/// How the discrete inner product weights each node.
enum class Measure {
    /// 2 pi h_r h_z / r_i acting on phi = r psi, i.e. the 3-D measure 2 pi r dr dz on psi.
    reduced_cylindrical,
    /// Plain cell volume h_1 ... h_d.
    flat,
};

/// Rectilinear row-major mesh; the last axis is contiguous in memory.
class Grid {
public:
    Grid() = default;
    Grid(Coordinates coords, std::vector<Axis> axes);

    /// Radial axis must be cell centred so no node sits on r = 0.
    static Grid reduced_cylindrical(double r_max, std::size_t nr, Axis axial);
    static Grid cartesian2d(Axis x, Axis z);
    static Grid cartesian3d(Axis x, Axis y, Axis z);

    Coordinates coords() const { return coords_; }
    Measure measure() const;
    const std::vector<Axis>& axes() const { return axes_; }
    const Axis& axis(std::size_t i) const { return axes_.at(i); }
    std::size_t rank() const { return axes_.size(); }
    std::size_t size() const;
    /// Quadrature weight per node (see Measure).
    const std::vector<double>& weights() const { return weights_; }
    /// Physical dimension of the integration domain (3 for reduced cylindrical).
    int physical_dimension() const;

    bool operator==(const Grid& other) const {
        return coords_ == other.coords_ && axes_ == other.axes_;
    }

private:
    Coordinates coords_ = Coordinates::cartesian2d;
    std::vector<Axis> axes_;
    std::vector<double> weights_;
};

}  // namespace nffd
