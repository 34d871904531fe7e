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


#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "sscsi/coding.hpp"
#include "sscsi/datacube.hpp"

namespace sscsi::harness {

/// ".ssc": "SSC1", u32 LE nx, ny, bands, then float32 LE voxels in Datacube
/// order. Values are narrowed to float on write.
void write_ssc(const std::filesystem::path& path, const Datacube& cube);
Datacube read_ssc(const std::filesystem::path& path);

/// Binary PGM (P5), 0 for opaque and 255 for open cells, x down the rows.
void write_mask_pgm(const std::filesystem::path& path, const CodedApertureSet& codes, int shot);
/// Writes shot_NNN.pgm for every shot plus masks.json (n_c, shots, seed, files).
void write_mask_set(const std::filesystem::path& dir, const CodedApertureSet& codes);
CodedApertureSet read_mask_set(const std::filesystem::path& dir);

/// FNV-1a 64 over raw bytes.
std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t file_hash(const std::filesystem::path& path);
std::uint64_t cube_hash(const Datacube& cube);
std::string hex64(std::uint64_t v);

}  // namespace sscsi::harness
