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

#include <atomic>
#include <cmath>

#include "nffd/errors.hpp"
#include "nffd/search.hpp"

using namespace nffd;

TEST_SUITE("search") {
    TEST_CASE("smooth saturating runner") {
        // 1 - F = 0.1 exp(-tau / 800) crosses 0.99 at 800 ln 10.
        std::atomic<int> calls{0};
        auto runner = [&](double tau) {
            ++calls;
            return 1.0 - 0.1 * std::exp(-tau / 800.0);
        };
        const auto r = min_time_for_fidelity(runner, 1000.0, 3000.0);
        CHECK(std::abs(r.fidelity - 0.99) < 0.002);
        CHECK(std::abs(runner(r.tau) - 0.99) < 0.002);
        CHECK(r.tau == doctest::Approx(800.0 * std::log(10.0)).epsilon(0.01));
        CHECK(r.samples.size() >= 5);
        for (std::size_t i = 1; i < r.samples.size(); ++i) CHECK(r.samples[i - 1].first < r.samples[i].first);
    }

    TEST_CASE("first upward crossing of an oscillating runner") {
        auto runner = [](double tau) { return 0.98 + 0.02 * std::sin(tau); };
        SearchSettings s;
        s.bracket_samples = 9;
        s.tolerance = 1e-4;
        const auto r = min_time_for_fidelity(runner, 0.0, 2.0 * 3.14159265358979 + 1.0, s);
        CHECK(r.tau == doctest::Approx(std::asin(0.5)).epsilon(1e-2));
    }

    TEST_CASE("constant runner at the target returns the lower edge") {
        const auto r = min_time_for_fidelity([](double) { return 0.99; }, 1500.0, 2500.0);
        CHECK(r.tau == 1500.0);
        CHECK(r.samples.size() == 1);
    }

    TEST_CASE("unreachable target and bad brackets") {
        CHECK_THROWS_AS(min_time_for_fidelity([](double) { return 0.5; }, 0.0, 1.0), BracketError);
        CHECK_THROWS_AS(min_time_for_fidelity([](double t) { return t; }, 1.0, 1.0), DomainError);
        SearchSettings s;
        s.bracket_samples = 2;
        CHECK_THROWS_AS(min_time_for_fidelity([](double t) { return t; }, 0.0, 1.0, s), DomainError);
    }
}
