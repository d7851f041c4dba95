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

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nffd/units.hpp"

namespace nffdgate {

using Json = nlohmann::ordered_json;

enum class Experiment { fresnel_sweep, step1, step2, step3, step4, gate, gate_sweep, schedule_dump };

std::string_view to_string(Experiment e);
Experiment experiment_from_string(std::string_view s);

/// Fully resolved settings of one run: every key of the experiment's schema with its
/// value, defaults filled in.
class RunConfig {
public:
    explicit RunConfig(Experiment e);

    Experiment experiment() const { return experiment_; }
    const Json& settings() const { return settings_; }

    /// Merges a config document: {"experiment": ..., "settings": {...}} or a run
    /// manifest holding one under "config". Throws nffd::ConfigError for unknown keys,
    /// mistyped values or a different experiment.
    void merge_document(const Json& doc);
    void merge_file(const std::filesystem::path& file);
    /// Applies "key=value"; the value is parsed as the key's type.
    void set(std::string_view assignment);

    double number(const std::string& key) const;
    std::optional<double> optional_number(const std::string& key) const;
    std::size_t count(const std::string& key) const;
    int integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::string text(const std::string& key) const;

    nffd::PhysicalParams params() const;

    /// {"experiment": ..., "settings": {...}}, accepted back by merge_document.
    Json to_json() const;

private:
    void assign(const std::string& key, const Json& value);

    Experiment experiment_;
    Json settings_;
};

}  // namespace nffdgate
