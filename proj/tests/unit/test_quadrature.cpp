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

#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "nffd/quadrature.hpp"

using namespace nffd;

TEST_SUITE("quadrature") {
    TEST_CASE("rules integrate polynomials up to degree 2n - 1 exactly") {
        for (int n : {1, 2, 5, 12, 40}) {
            const auto& r = gauss_legendre(n);
            REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
            for (int deg = 0; deg <= 2 * n - 1; ++deg) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
                const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
                CHECK(std::abs(s - exact) < 1e-13);
            }
        }
    }

    TEST_CASE("nodes are symmetric and weights positive") {
        const auto& r = gauss_legendre(17);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            CHECK(r.weights[i] > 0.0);
            CHECK(std::abs(r.nodes[i] + r.nodes[r.nodes.size() - 1 - i]) < 1e-15);
        }
    }

    TEST_CASE("concurrent requests share one rule") {
        std::vector<const GaussLegendre*> seen(4);
        {
            std::vector<std::jthread> pool;
            for (int t = 0; t < 4; ++t) pool.emplace_back([&, t] { seen[t] = &gauss_legendre(33); });
        }
        for (auto* p : seen) CHECK(p == seen[0]);
    }
}
