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

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "nffd/io.hpp"

namespace nffdgate {

/// Files produced by one run, kept in memory until the run has succeeded.
struct Artifacts {
    std::vector<std::pair<std::string, nffd::CsvTable>> tables;
    std::vector<std::pair<std::string, nffd::Wavefunction>> snapshots;
    Json convergence;  // null unless a refined rerun was requested
    Json summary = Json::object();
};

/// Checks everything that can be checked without running (ranges, grid sizes).
void validate(const RunConfig& cfg);

Artifacts execute(const RunConfig& cfg);

/// Writes the artifacts and manifest.json into `dir`; returns the manifest.
Json write_outputs(const RunConfig& cfg, const Artifacts& a, const std::filesystem::path& dir,
                   double wall_clock_s);

std::string sha256_hex(const std::filesystem::path& file);

}  // namespace nffdgate
