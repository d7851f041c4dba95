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

#include <functional>
#include <utility>
#include <vector>

namespace nffd {

struct SearchSettings {
    double target = 0.99;
    double tolerance = 0.002;         // accepted |F(tau) - target|
    std::size_t bracket_samples = 4;  // uniform runs across the bracket (>= 3)
    std::size_t max_refinements = 8;
};

struct FidelitySearch {
    double tau = 0.0;
    double fidelity = 0.0;
    std::vector<std::pair<double, double>> samples;  // every (tau, |F|) evaluated, sorted
};

/// Shortest tau in [lo, hi] whose final |F| reaches the target. The runner maps a
/// duration to a final fidelity. Samples are interpolated with a shape-preserving
/// piecewise cubic; the first upward crossing is located on the interpolant and then
/// confirmed by a full run, repeating until the run lands within tolerance. A runner
/// already at the target at `lo` returns `lo`.
///
/// Throws BracketError if no sample reaches the target, ConvergenceError if the
/// refinements run out.
FidelitySearch min_time_for_fidelity(const std::function<double(double)>& runner, double lo,
                                     double hi, const SearchSettings& settings = {});

}  // namespace nffd
