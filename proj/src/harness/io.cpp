// Copyright 2026 the sscsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sscsi/harness/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sscsi/errors.hpp"

namespace sscsi::harness {

namespace fs = std::filesystem;

namespace {

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

std::vector<unsigned char> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const fs::path& path, std::span<const unsigned char> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string shot_name(int q) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "shot_%03d.pgm", q);
  return buf;
}

}  // namespace

void write_ssc(const fs::path& path, const Datacube& cube) {
  const CubeDims d = cube.dims();
  std::vector<unsigned char> out{'S', 'S', 'C', '1'};
  out.reserve(16 + 4 * cube.size());
  put_u32(out, static_cast<std::uint32_t>(d.nx));
  put_u32(out, static_cast<std::uint32_t>(d.ny));
  put_u32(out, static_cast<std::uint32_t>(d.bands));
  for (double v : cube.values()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) throw FormatError("cube holds a non-finite value");
    put_u32(out, std::bit_cast<std::uint32_t>(f));
  }
  dump(path, out);
}

Datacube read_ssc(const fs::path& path) {
  const auto bytes = slurp(path);
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "SSC1", 4) != 0)
    throw FormatError(path.string() + ": not an .ssc file");
  CubeDims d;
  d.nx = static_cast<int>(get_u32(bytes.data() + 4));
  d.ny = static_cast<int>(get_u32(bytes.data() + 8));
  d.bands = static_cast<int>(get_u32(bytes.data() + 12));
  if (d.nx <= 0 || d.ny <= 0 || d.bands <= 0) throw FormatError(path.string() + ": bad dims");
  const auto n = static_cast<std::uint64_t>(d.nx) * d.ny * d.bands;
  if (bytes.size() != 16 + 4 * n) throw FormatError(path.string() + ": payload length mismatch");
  std::vector<double> data(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const float f = std::bit_cast<float>(get_u32(bytes.data() + 16 + 4 * i));
    if (!std::isfinite(f)) throw FormatError(path.string() + ": non-finite voxel");
    data[i] = f;
  }
  return Datacube(d, std::move(data));
}

void write_mask_pgm(const fs::path& path, const CodedApertureSet& codes, int shot) {
  const int n = codes.n_c();
  std::ostringstream head;
  head << "P5\n" << n << ' ' << n << "\n255\n";
  const std::string h = head.str();
  std::vector<unsigned char> out(h.begin(), h.end());
  for (std::uint8_t t : codes.mask(shot)) out.push_back(t ? 255 : 0);
  dump(path, out);
}

void write_mask_set(const fs::path& dir, const CodedApertureSet& codes) {
  fs::create_directories(dir);
  nlohmann::json j;
  j["n_c"] = codes.n_c();
  j["shots"] = codes.shots();
  j["seed"] = codes.seed();
  j["files"] = nlohmann::json::array();
  for (int q = 0; q < codes.shots(); ++q) {
    write_mask_pgm(dir / shot_name(q), codes, q);
    j["files"].push_back(shot_name(q));
  }
  std::ofstream(dir / "masks.json") << j.dump(2) << '\n';
}

CodedApertureSet read_mask_set(const fs::path& dir) {
  std::ifstream in(dir / "masks.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "masks.json").string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("masks.json: ") + e.what());
  }
  const int n = j.at("n_c").get<int>();
  std::vector<std::vector<std::uint8_t>> masks;
  for (const auto& name : j.at("files")) {
    const auto bytes = slurp(dir / name.get<std::string>());
    std::istringstream head(std::string(bytes.begin(), bytes.begin() + std::min<std::size_t>(bytes.size(), 64)));
    std::string magic;
    int w = 0, h = 0, maxv = 0;
    head >> magic >> w >> h >> maxv;
    if (magic != "P5" || w != n || h != n || maxv != 255) throw FormatError(name.get<std::string>() + ": bad PGM header");
    const auto offset = static_cast<std::size_t>(head.tellg()) + 1;
    if (bytes.size() != offset + static_cast<std::size_t>(n) * n)
      throw FormatError(name.get<std::string>() + ": bad PGM payload");
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n) * n);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = bytes[offset + i] ? 1 : 0;
    masks.push_back(std::move(m));
  }
  return CodedApertureSet(n, std::move(masks), j.at("seed").get<std::uint64_t>());
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t file_hash(const fs::path& path) { return fnv1a(slurp(path)); }

std::uint64_t cube_hash(const Datacube& cube) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const std::array<int, 3> dims{cube.dims().nx, cube.dims().ny, cube.dims().bands};
  h = fnv1a({reinterpret_cast<const unsigned char*>(dims.data()), sizeof(dims)}, h);
  const auto v = cube.values();
  return fnv1a({reinterpret_cast<const unsigned char*>(v.data()), v.size_bytes()}, h);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace sscsi::harness
