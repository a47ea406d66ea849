// SPDX-License-Identifier: Apache-2.0
//
// maopt: channel estimation, position selection and beamforming for
// multiuser wideband movable-antenna systems
// Copyright (C) 2026 The maopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "maopt/io.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maopt::io {

static_assert(std::endian::native == std::endian::little, "binary array I/O assumes a little-endian host");

void write_complex_array(const fs::path& path, std::span<const cd> values)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const cd& v : values) {
        const double pair[2] = {v.real(), v.imag()};
        out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
    }
    if (!out)
        throw std::runtime_error("short write to " + path.string());
}

std::vector<cd> read_complex_array(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() % (2 * sizeof(double)) != 0)
        throw std::runtime_error(path.string() + " is not a whole number of complex float64 values");
    std::vector<cd> out(bytes.size() / (2 * sizeof(double)));
    for (std::size_t i = 0; i < out.size(); ++i) {
        double pair[2];
        std::memcpy(pair, bytes.data() + i * sizeof(pair), sizeof(pair));
        out[i] = {pair[0], pair[1]};
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

fs::path with_ext(const fs::path& stem, const char* ext)
{
    return fs::path(stem.string() + ext);
}

nlohmann::json read_sidecar(const fs::path& stem)
{
    try {
        return nlohmann::json::parse(read_text(with_ext(stem, ".json")));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed sidecar " + with_ext(stem, ".json").string() + ": " + e.what());
    }
}

int sidecar_int(const nlohmann::json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_number_integer())
        throw std::runtime_error(std::string("sidecar field '") + field + "' missing or not an integer");
    return j.at(field).get<int>();
}

} // namespace

TensorFiles save_tensor(const fs::path& stem, const ChannelTensor& tensor, std::uint64_t seed)
{
    std::vector<cd> flat;
    flat.reserve(static_cast<std::size_t>(tensor.num_positions()) * tensor.num_users() * tensor.num_subcarriers());
    for (int n = 0; n < tensor.num_positions(); ++n)
        for (int k = 0; k < tensor.num_users(); ++k)
            for (int q = 0; q < tensor.num_subcarriers(); ++q)
                flat.push_back(tensor(n, k, q));
    TensorFiles files{with_ext(stem, ".bin"), with_ext(stem, ".json")};
    write_complex_array(files.data, flat);
    nlohmann::ordered_json side;
    side["n"] = tensor.num_positions();
    side["k"] = tensor.num_users();
    side["nc"] = tensor.num_subcarriers();
    side["seed"] = seed;
    write_text(files.sidecar, side.dump(2) + "\n");
    return files;
}

ChannelTensor load_tensor(const fs::path& stem)
{
    const auto side = read_sidecar(stem);
    const int n = sidecar_int(side, "n");
    const int k = sidecar_int(side, "k");
    const int nc = sidecar_int(side, "nc");
    const auto flat = read_complex_array(with_ext(stem, ".bin"));
    if (flat.size() != static_cast<std::size_t>(n) * k * nc)
        throw std::runtime_error("tensor file size does not match its sidecar");
    ChannelTensor t(n, k, nc);
    std::size_t i = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < k; ++b)
            for (int q = 0; q < nc; ++q)
                t(a, b, q) = flat[i++];
    return t;
}

TensorFiles save_solution(const fs::path& stem, const BeamformingSolution& solution, const SolutionInfo& info)
{
    const int nc = solution.num_subcarriers();
    const int m = nc > 0 ? static_cast<int>(solution.matrices.front().rows()) : 0;
    const int k = nc > 0 ? static_cast<int>(solution.matrices.front().cols()) : 0;
    std::vector<cd> flat;
    flat.reserve(static_cast<std::size_t>(m) * k * nc);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < k; ++b)
            for (int q = 0; q < nc; ++q)
                flat.push_back(solution.matrices[static_cast<std::size_t>(q)](a, b));
    TensorFiles files{with_ext(stem, ".bin"), with_ext(stem, ".json")};
    write_complex_array(files.data, flat);
    nlohmann::ordered_json side;
    side["m"] = m;
    side["k"] = k;
    side["nc"] = nc;
    side["pt"] = info.transmit_power;
    side["sigma2"] = info.noise_power;
    side["scheme"] = info.scheme;
    side["iterations"] = info.iterations;
    write_text(files.sidecar, side.dump(2) + "\n");
    return files;
}

BeamformingSolution load_solution(const fs::path& stem, SolutionInfo* info)
{
    const auto side = read_sidecar(stem);
    const int m = sidecar_int(side, "m");
    const int k = sidecar_int(side, "k");
    const int nc = sidecar_int(side, "nc");
    const auto flat = read_complex_array(with_ext(stem, ".bin"));
    if (flat.size() != static_cast<std::size_t>(m) * k * nc)
        throw std::runtime_error("solution file size does not match its sidecar");
    BeamformingSolution sol;
    sol.matrices.assign(static_cast<std::size_t>(nc), CMatrix(m, k));
    std::size_t i = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < k; ++b)
            for (int q = 0; q < nc; ++q)
                sol.matrices[static_cast<std::size_t>(q)](a, b) = flat[i++];
    if (info) {
        info->transmit_power = side.value("pt", 0.0);
        info->noise_power = side.value("sigma2", 0.0);
        info->scheme = side.value("scheme", std::string{});
        info->iterations = side.value("iterations", 0);
    }
    return sol;
}

std::string index_list_json(std::span<const int> zero_based)
{
    auto arr = nlohmann::json::array();
    for (int i : zero_based)
        arr.push_back(i + 1);
    return arr.dump() + "\n";
}

std::vector<int> parse_index_list(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("index list is not valid JSON: ") + e.what());
    }
    if (!j.is_array())
        throw std::invalid_argument("index list must be a JSON array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<long long>() < 1)
            throw std::invalid_argument("index list entries must be positive integers");
        out.push_back(v.get<int>() - 1);
    }
    return out;
}

fs::path unique_stem(const fs::path& dir, const std::string& name, std::span<const std::string> extensions)
{
    auto free = [&](const fs::path& stem) {
        for (const auto& ext : extensions)
            if (fs::exists(fs::path(stem.string() + ext)))
                return false;
        return true;
    };
    fs::path stem = dir / name;
    for (int i = 1; !free(stem); ++i)
        stem = dir / (name + "-" + std::to_string(i));
    return stem;
}

} // namespace maopt::io
