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

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "nffd/errors.hpp"
#include "run.hpp"

#ifndef NFFDGATE_VERSION
#define NFFDGATE_VERSION "0.0.0"
#endif

namespace nffdgate {

std::string sha256_hex(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) throw nffd::IntegrityError("manifest: cannot read " + file.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf;
    while (is) {
        is.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(is.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md;
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Json write_outputs(const RunConfig& cfg, const Artifacts& a, const std::filesystem::path& dir,
                   double wall_clock_s) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    for (const auto& [name, table] : a.tables) {
        table.write(dir / name);
        files.push_back(name);
    }
    for (const auto& [name, psi] : a.snapshots) {
        nffd::write_snapshot(psi, dir / name);
        files.push_back(name);
    }

    Json m;
    m["tool"] = "nffdgate";
    m["version"] = NFFDGATE_VERSION;
    m["config"] = cfg.to_json();
    m["summary"] = a.summary;
    m["convergence"] = a.convergence;
    m["wall_clock_s"] = wall_clock_s;
    Json outputs = Json::array();
    for (const auto& f : files)
        outputs.push_back({{"file", f},
                           {"bytes", std::filesystem::file_size(dir / f)},
                           {"sha256", sha256_hex(dir / f)}});
    m["outputs"] = outputs;

    std::ofstream os(dir / "manifest.json", std::ios::binary);
    os << m.dump(2) << '\n';
    if (!os) throw nffd::IntegrityError("manifest: write failed in " + dir.string());
    return m;
}

}  // namespace nffdgate
