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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nffd/propagator.hpp"
#include "nffd/wavefunction.hpp"

namespace nffd {

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for non-finite).
std::string format_number(double v);

/// Comma-separated table with a mandatory header, '.' decimals and LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_; }

    /// Throws ContractError unless the row has one value per column.
    void add_row(std::span<const double> values);
    void add_row(std::initializer_list<double> values) {
        add_row(std::span<const double>(values.begin(), values.size()));
    }

    std::string str() const;
    void write(std::ostream& os) const;
    void write(const std::filesystem::path& file) const;

private:
    std::vector<std::string> header_;
    std::string body_;
    std::size_t rows_ = 0;
};

/// Trace as (t_<unit>, t_us, norm, fidelity_re, fidelity_im, fidelity_abs); `time_unit`
/// converts the trace time to seconds.
CsvTable trace_table(std::span<const TraceSample> trace, Scaling scaling, double time_unit);

/// Flat binary snapshot: magic, endianness marker, coordinate and scaling tags, then per
/// axis (origin, step, size) and the values as row-major (re, im) pairs of doubles.
void write_snapshot(const Wavefunction& psi, const std::filesystem::path& file);
/// Throws IntegrityError for a malformed or foreign-endian file.
Wavefunction read_snapshot(const std::filesystem::path& file);

}  // namespace nffd
