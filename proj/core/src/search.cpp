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

#include "nffd/search.hpp"

#include <cmath>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <sstream>

#include "nffd/errors.hpp"

namespace nffd {

namespace {

double interpolated_crossing(const std::vector<std::pair<double, double>>& samples,
                             std::size_t segment, double target) {
    std::vector<double> x, y;
    for (const auto& [t, f] : samples) {
        x.push_back(t);
        y.push_back(f);
    }
    boost::math::interpolators::pchip<std::vector<double>> spline(std::move(x), std::move(y));
    auto g = [&](double t) { return spline(t) - target; };
    const double a = samples[segment].first, b = samples[segment + 1].first;
    if (g(a) >= 0.0) return a;
    const auto tol = boost::math::tools::eps_tolerance<double>(40);
    const auto [l, r] = boost::math::tools::bisect(g, a, b, tol);
    return 0.5 * (l + r);
}

}  // namespace

FidelitySearch min_time_for_fidelity(const std::function<double(double)>& runner, double lo,
                                     double hi, const SearchSettings& settings) {
    if (!(hi > lo)) throw DomainError("min_time_for_fidelity: empty bracket");
    if (settings.bracket_samples < 3)
        throw DomainError("min_time_for_fidelity: need at least three bracket samples");

    FidelitySearch out;
    auto& s = out.samples;
    auto run = [&](double tau) {
        const double f = runner(tau);
        s.emplace_back(tau, f);
        std::sort(s.begin(), s.end());
        return f;
    };

    const std::size_t m = settings.bracket_samples;
    for (std::size_t i = 0; i < m; ++i) {
        const double tau = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
        const double f = run(tau);
        if (i == 0 && f >= settings.target) {
            out.tau = lo;
            out.fidelity = f;
            return out;
        }
    }
    // The interpolant needs four points.
    while (s.size() < 4) {
        std::size_t widest = 0;
        for (std::size_t i = 1; i + 1 < s.size(); ++i)
            if (s[i + 1].first - s[i].first > s[widest + 1].first - s[widest].first) widest = i;
        run(0.5 * (s[widest].first + s[widest + 1].first));
    }

    for (std::size_t iter = 0; iter <= settings.max_refinements; ++iter) {
        std::size_t seg = s.size();
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i].second < settings.target && s[i + 1].second >= settings.target) {
                seg = i;
                break;
            }
        }
        if (seg == s.size()) {
            std::ostringstream msg;
            msg << "min_time_for_fidelity: target " << settings.target << " not reached in ["
                << lo << ", " << hi << "]";
            throw BracketError(msg.str());
        }
        const double tau = interpolated_crossing(s, seg, settings.target);
        const double f = run(tau);
        if (std::abs(f - settings.target) < settings.tolerance) {
            out.tau = tau;
            out.fidelity = f;
            return out;
        }
    }
    throw ConvergenceError("min_time_for_fidelity: refinements exhausted", 0.0);
}

}  // namespace nffd
