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

#include "config.hpp"

#include <charconv>
#include <fstream>
#include <utility>

#include "nffd/errors.hpp"
#include "nffd/pipeline.hpp"

namespace nffdgate {

namespace {

using nffd::ConfigError;

constexpr double kAmu = 1.66053906660e-27;

const std::pair<Experiment, std::string_view> kNames[] = {
    {Experiment::fresnel_sweep, "fresnel-sweep"}, {Experiment::step1, "step1"},
    {Experiment::step2, "step2"},                 {Experiment::step3, "step3"},
    {Experiment::step4, "step4"},                 {Experiment::gate, "gate"},
    {Experiment::gate_sweep, "gate-sweep"},       {Experiment::schedule_dump, "schedule-dump"},
};

Json physical_defaults() {
    const nffd::ParamInputs in;
    return {
        {"params.lambda_F_nm", in.lambda_F * 1e9},
        {"params.lambda_0_nm", in.lambda_0 * 1e9},
        {"params.U0_uK", in.U0_kelvin * 1e6},
        {"params.lambda_OL_nm", in.lambda_OL * 1e9},
        {"params.V0_Er", in.V0_over_Er},
        {"params.waist_lambdaOL", in.w_over_lambdaOL},
        {"params.a_s_nm", in.a_s * 1e9},
        {"params.mass_amu", in.mass / kAmu},
    };
}

Json step1_defaults() {
    const nffd::Step1Config c;
    return {{"tau", 2500.0},        {"reverse", false},          {"a_ini", c.a_ini},
            {"a_fin", c.a_fin},     {"r_max", c.r_max},          {"nr", c.nr},
            {"z_lo", c.z_lo},       {"z_hi", c.z_hi},            {"nz", c.nz},
            {"apertures", c.apertures}, {"dt", c.dt},            {"sample_every", c.sample_every},
            {"cache_dir", ""},      {"refine_check", false},     {"snapshot", false}};
}

Json step2_defaults() {
    const nffd::Step2Config c;
    return {{"tau_us", 560.0},    {"reverse", false},         {"geometry", "full"},
            {"a_fin", c.a_fin},   {"x_half", c.x_half},       {"nx", c.nx},
            {"y_half", c.y_half}, {"ny", c.ny},               {"z_half", c.z_half},
            {"nz", c.nz},         {"dt", c.dt},               {"sample_every", c.sample_every},
            {"wave_factor", c.wave_factor}, {"refine_check", false}, {"snapshot", false}};
}

Json step3_defaults() {
    const nffd::Step3Config c;
    return {{"tau_us", 577.0},
            {"reverse", false},
            {"n", c.n},
            {"state", 1},
            {"convention", "hyperfine"},
            {"rho_max", c.rho_max},
            {"nrho", c.nrho},
            {"points_per_cell", c.points_per_cell},
            {"margin", c.margin},
            {"dt", c.dt},
            {"wrap", c.wrap},
            {"sample_every", c.sample_every},
            {"leakage_limit", c.leakage_limit},
            {"wave_factor", c.wave_factor},
            {"refine_check", false},
            {"snapshot", false}};
}

Json step4_defaults() {
    const nffd::Step4Config c;
    return {{"rho_max", c.rho_max}, {"nrho", c.nrho}, {"points_per_cell", c.points_per_cell},
            {"dt", c.dt}, {"wave_factor", c.wave_factor}, {"t_hold_ms", nullptr}};
}

Json defaults(Experiment e) {
    Json d;
    switch (e) {
        case Experiment::fresnel_sweep:
            d = {{"a_min", 1.2}, {"a_max", 3.0}, {"count", 19}};
            break;
        case Experiment::step1: d = step1_defaults(); break;
        case Experiment::step2: d = step2_defaults(); break;
        case Experiment::step3: d = step3_defaults(); break;
        case Experiment::step4: d = step4_defaults(); break;
        case Experiment::gate:
            d = {{"simulate", false},     {"tau1", 2500.0},   {"tau2_us", 560.0},
                 {"tau3_us", 1280.0},     {"n", 6},           {"t_hold_ms", nullptr},
                 {"per_process_fidelity", 0.99}, {"processes", 12}, {"geometry", "full"},
                 {"cache_dir", ""}};
            break;
        case Experiment::gate_sweep:
            d = {{"step", "1"},   {"tau_min", 1500.0}, {"tau_max", 2500.0}, {"count", 3},
                 {"n", 6},        {"geometry", "full"}, {"search", false},   {"target", 0.99},
                 {"cache_dir", ""}};
            break;
        case Experiment::schedule_dump:
            return {{"kind", "aperture"}, {"samples", 101}, {"a_ini", 1.5},
                    {"a_fin", 2.8},       {"n", 3},         {"wrap", false}};
    }
    const Json phys = physical_defaults();
    for (const auto& [k, v] : phys.items()) d[k] = v;
    return d;
}

bool compatible(const Json& def, const Json& v) {
    if (def.is_null()) return v.is_null() || v.is_number();
    if (def.is_number_float()) return v.is_number();
    if (def.is_number_unsigned()) return v.is_number_unsigned();
    if (def.is_number_integer()) return v.is_number_integer();
    if (def.is_boolean()) return v.is_boolean();
    if (def.is_string()) return v.is_string();
    return false;
}

template <typename T>
std::optional<T> parse_exact(std::string_view s) {
    T v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::string_view to_string(Experiment e) {
    for (const auto& [k, v] : kNames)
        if (k == e) return v;
    return "?";
}

Experiment experiment_from_string(std::string_view s) {
    for (const auto& [k, v] : kNames)
        if (v == s) return k;
    throw ConfigError("unknown experiment: " + std::string(s));
}

RunConfig::RunConfig(Experiment e) : experiment_(e), settings_(defaults(e)) {}

void RunConfig::assign(const std::string& key, const Json& value) {
    const Json def = defaults(experiment_);
    if (!def.contains(key))
        throw ConfigError("unknown key '" + key + "' for experiment " +
                          std::string(to_string(experiment_)));
    const Json& d = def.at(key);
    if (!compatible(d, value))
        throw ConfigError("key '" + key + "' expects a " +
                          std::string(d.is_null() ? "number or null" : d.type_name()) +
                          ", got " + value.dump());
    settings_[key] = d.is_number_float() ? Json(value.get<double>()) : value;
}

void RunConfig::merge_document(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config: document must be a JSON object");
    if (doc.contains("config") && doc.contains("outputs")) return merge_document(doc.at("config"));
    for (const auto& [k, v] : doc.items()) {
        if (k == "experiment") {
            if (!v.is_string() || experiment_from_string(v.get<std::string>()) != experiment_)
                throw ConfigError("config: document is for experiment " + v.dump() +
                                  ", not " + std::string(to_string(experiment_)));
        } else if (k == "settings") {
            if (!v.is_object()) throw ConfigError("config: 'settings' must be an object");
            for (const auto& [sk, sv] : v.items()) assign(sk, sv);
        } else {
            throw ConfigError("config: unknown top-level key '" + k + "'");
        }
    }
}

void RunConfig::merge_file(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("config: cannot open " + file.string());
    Json doc;
    try {
        doc = Json::parse(is);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config: " + file.string() + ": " + e.what());
    }
    merge_document(doc);
}

void RunConfig::set(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'");
    const std::string key(assignment.substr(0, eq));
    const std::string_view raw = assignment.substr(eq + 1);
    const Json def = defaults(experiment_);
    if (!def.contains(key))
        throw ConfigError("unknown key '" + key + "' for experiment " +
                          std::string(to_string(experiment_)));
    const Json& d = def.at(key);
    Json value;
    if (d.is_string()) {
        value = std::string(raw);
    } else if (d.is_boolean()) {
        if (raw != "true" && raw != "false")
            throw ConfigError("key '" + key + "' expects true or false");
        value = raw == "true";
    } else if (d.is_number_unsigned() || d.is_number_integer()) {
        const auto v = parse_exact<long long>(raw);
        if (!v) throw ConfigError("key '" + key + "' expects an integer");
        if (d.is_number_unsigned()) {
            if (*v < 0) throw ConfigError("key '" + key + "' must be non-negative");
            value = static_cast<unsigned long long>(*v);
        } else {
            value = *v;
        }
    } else if (d.is_null() && raw == "null") {
        value = nullptr;
    } else {
        const auto v = parse_exact<double>(raw);
        if (!v) throw ConfigError("key '" + key + "' expects a number");
        value = *v;
    }
    assign(key, value);
}

double RunConfig::number(const std::string& key) const { return settings_.at(key).get<double>(); }

std::optional<double> RunConfig::optional_number(const std::string& key) const {
    const auto& v = settings_.at(key);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
}

std::size_t RunConfig::count(const std::string& key) const {
    return settings_.at(key).get<std::size_t>();
}

int RunConfig::integer(const std::string& key) const { return settings_.at(key).get<int>(); }
bool RunConfig::flag(const std::string& key) const { return settings_.at(key).get<bool>(); }
std::string RunConfig::text(const std::string& key) const {
    return settings_.at(key).get<std::string>();
}

nffd::PhysicalParams RunConfig::params() const {
    nffd::ParamInputs in;
    in.lambda_F = number("params.lambda_F_nm") * 1e-9;
    in.lambda_0 = number("params.lambda_0_nm") * 1e-9;
    in.U0_kelvin = number("params.U0_uK") * 1e-6;
    in.lambda_OL = number("params.lambda_OL_nm") * 1e-9;
    in.V0_over_Er = number("params.V0_Er");
    in.w_over_lambdaOL = number("params.waist_lambdaOL");
    in.a_s = number("params.a_s_nm") * 1e-9;
    in.mass = number("params.mass_amu") * kAmu;
    try {
        return nffd::make_params(in);
    } catch (const nffd::DomainError& e) {
        throw ConfigError(e.what());
    }
}

Json RunConfig::to_json() const {
    return {{"experiment", std::string(to_string(experiment_))}, {"settings", settings_}};
}

}  // namespace nffdgate
