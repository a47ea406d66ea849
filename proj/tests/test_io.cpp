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
#include "oracles.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

using namespace maopt;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("maopt_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<unsigned char> bytes(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("complex arrays are little-endian float64 pairs")
{
    const auto dir = scratch_dir("array");
    const std::vector<cd> v{{1.0, -2.5}, {0.0, 3.0}};
    io::write_complex_array(dir / "a.bin", v);
    const auto raw = bytes(dir / "a.bin");
    REQUIRE(raw.size() == 32);
    // 1.0 = 0x3FF0000000000000
    const unsigned char one[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
    CHECK(std::memcmp(raw.data(), one, 8) == 0);
    CHECK(io::read_complex_array(dir / "a.bin") == v);

    std::ofstream(dir / "odd.bin", std::ios::binary) << "abc";
    CHECK_THROWS(io::read_complex_array(dir / "odd.bin"));
    CHECK_THROWS(io::read_complex_array(dir / "missing.bin"));
}

TEST_CASE("tensor files")
{
    const auto dir = scratch_dir("tensor");
    Rng rng(1);
    const auto t = oracle::random_tensor(rng, 3, 2, 4);
    const auto files = io::save_tensor(dir / "h", t, 99);
    CHECK(files.data == dir / "h.bin");
    CHECK(files.sidecar == dir / "h.json");
    const auto raw = io::read_complex_array(files.data);
    REQUIRE(raw.size() == 24);
    // [n][k][q], q fastest
    CHECK(raw[1] == t(0, 0, 1));
    CHECK(raw[4] == t(0, 1, 0));
    CHECK(raw[8] == t(1, 0, 0));
    const auto back = io::load_tensor(dir / "h");
    REQUIRE(back.same_shape(t));
    for (int k = 0; k < 2; ++k)
        CHECK(back.user(k) == t.user(k));
    const auto sidecar = io::read_text(files.sidecar);
    CHECK(sidecar.find("\"seed\": 99") != std::string::npos);

    io::write_text(dir / "bad.json", R"({"n": 3, "k": 2})");
    io::write_complex_array(dir / "bad.bin", raw);
    CHECK_THROWS_WITH(io::load_tensor(dir / "bad"), doctest::Contains("nc"));
}

TEST_CASE("solution files")
{
    const auto dir = scratch_dir("solution");
    Rng rng(2);
    BeamformingSolution w;
    w.matrices = {oracle::random_matrix(rng, 4, 2), oracle::random_matrix(rng, 4, 2), oracle::random_matrix(rng, 4, 2)};
    io::save_solution(dir / "w", w, {10.0, 1.0, "wmmse", 17});
    const auto raw = io::read_complex_array(dir / "w.bin");
    REQUIRE(raw.size() == 24);
    // [m][k][q]
    CHECK(raw[1] == w.matrices[1](0, 0));
    CHECK(raw[3] == w.matrices[0](0, 1));
    io::SolutionInfo info;
    const auto back = io::load_solution(dir / "w", &info);
    REQUIRE(back.num_subcarriers() == 3);
    for (int q = 0; q < 3; ++q)
        CHECK(back.matrices[q] == w.matrices[q]);
    CHECK(info.scheme == "wmmse");
    CHECK(info.iterations == 17);
    CHECK(info.transmit_power == 10.0);
}

TEST_CASE("index lists are 1-based")
{
    const std::vector<int> zero_based{4, 0, 2};
    const auto text = io::index_list_json(zero_based);
    CHECK(text == "[5,1,3]\n");
    CHECK(io::parse_index_list(text) == zero_based);
    CHECK_THROWS(io::parse_index_list("[0]"));
    CHECK_THROWS(io::parse_index_list("{}"));
}

TEST_CASE("unique stems never reuse a name")
{
    const auto dir = scratch_dir("unique");
    const std::string ext[] = {".bin", ".json"};
    const auto a = io::unique_stem(dir, "x", ext);
    CHECK(a == dir / "x");
    io::write_text(dir / "x.json", "{}");
    const auto b = io::unique_stem(dir, "x", ext);
    CHECK(b == dir / "x-1");
    io::write_text(dir / "x-1.bin", "");
    CHECK(io::unique_stem(dir, "x", ext) == dir / "x-2");
}
