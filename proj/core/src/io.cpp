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

#include "nffd/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>

#include "nffd/errors.hpp"

namespace nffd {

namespace {

constexpr char kMagic[8] = {'N', 'F', 'F', 'D', 'W', 'F', '0', '1'};
constexpr std::uint32_t kEndianMarker = 0x01020304u;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw IntegrityError("read_snapshot: truncated file");
    return v;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return {buf.data(), res.ptr};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw ContractError("CsvTable: header must not be empty");
}

void CsvTable::add_row(std::span<const double> values) {
    if (values.size() != header_.size())
        throw ContractError("CsvTable: row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_number(values[i]);
    }
    body_ += '\n';
    ++rows_;
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    return out + body_;
}

void CsvTable::write(std::ostream& os) const {
    const auto s = str();
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void CsvTable::write(const std::filesystem::path& file) const {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("CsvTable: cannot open " + file.string());
    write(os);
    if (!os) throw std::runtime_error("CsvTable: write failed for " + file.string());
}

CsvTable trace_table(std::span<const TraceSample> trace, Scaling scaling, double time_unit) {
    CsvTable t({scaling == Scaling::nffd ? "t_tauF" : "t_tauOL", "t_us", "norm",
                "fidelity_re", "fidelity_im", "fidelity_abs"});
    for (const auto& s : trace)
        t.add_row({s.t, s.t * time_unit * 1e6, s.norm, s.overlap.real(), s.overlap.imag(),
                   std::abs(s.overlap)});
    return t;
}

void write_snapshot(const Wavefunction& psi, const std::filesystem::path& file) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + file.string());
    os.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(os, kEndianMarker);
    put<std::uint8_t>(os, static_cast<std::uint8_t>(psi.coords()));
    put<std::uint8_t>(os, static_cast<std::uint8_t>(psi.scaling()));
    const auto& axes = psi.grid().axes();
    put<std::uint32_t>(os, static_cast<std::uint32_t>(axes.size()));
    for (const auto& a : axes) {
        put<double>(os, a.origin);
        put<double>(os, a.step);
        put<std::uint64_t>(os, a.size);
    }
    for (const auto& v : psi.values()) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw std::runtime_error("write_snapshot: write failed for " + file.string());
}

Wavefunction read_snapshot(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + file.string());
    char magic[sizeof kMagic];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw IntegrityError("read_snapshot: not a wavefunction snapshot");
    if (get<std::uint32_t>(is) != kEndianMarker)
        throw IntegrityError("read_snapshot: endianness mismatch");
    const auto coords = get<std::uint8_t>(is);
    const auto scaling = get<std::uint8_t>(is);
    if (coords > static_cast<std::uint8_t>(Coordinates::cartesian3d) ||
        scaling > static_cast<std::uint8_t>(Scaling::lattice))
        throw IntegrityError("read_snapshot: unknown coordinate or scaling tag");
    const auto rank = get<std::uint32_t>(is);
    if (rank < 2 || rank > 3) throw IntegrityError("read_snapshot: bad rank");
    std::vector<Axis> axes(rank);
    std::size_t total = 1;
    for (auto& a : axes) {
        a.origin = get<double>(is);
        a.step = get<double>(is);
        a.size = get<std::uint64_t>(is);
        if (a.size == 0 || !(a.step > 0.0)) throw IntegrityError("read_snapshot: bad axis");
        total *= a.size;
    }
    Grid grid(static_cast<Coordinates>(coords), std::move(axes));
    std::vector<Wavefunction::value_type> values(total);
    for (auto& v : values) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        v = {re, im};
    }
    if (is.peek() != std::char_traits<char>::eof())
        throw IntegrityError("read_snapshot: trailing bytes");
    return Wavefunction(std::move(grid), static_cast<Scaling>(scaling), std::move(values));
}

}  // namespace nffd
