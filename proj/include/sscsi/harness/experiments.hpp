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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscsi/datacube.hpp"
#include "sscsi/harness/config.hpp"

namespace sscsi::harness {

inline constexpr const char* kToolVersion = "0.1.0";

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string text() const;
};

/// One sense -> assemble -> solve -> evaluate pipeline.
struct RunRecord {
  std::string run_id;
  std::string architecture = "sscsi";
  std::string s;  ///< exact value as text; empty for the CASSI baseline
  int shots = 0;
  CubeDims dims;
  double cr = 0.0;
  double psnr_db = 0.0;
  std::optional<double> mu;
  std::int64_t zero_columns = 0;
  /// |r| per spiky probe; empty optional when a signature is constant
  std::vector<std::optional<double>> r;
  std::optional<double> r_mean;
  /// per-voxel RMSE of the super-resolved cube and of the Delta_c = Delta_d
  /// reconstruction box-upsampled to the same grid
  std::optional<double> rmse;
  std::optional<double> rmse_upsampled;
  int iterations = 0;
  bool converged = false;
};

struct ExperimentResult {
  std::string experiment;
  std::vector<RunRecord> runs;
  CsvTable table;
  nlohmann::json manifest;
  /// empty when no output directory was given
  std::filesystem::path csv_path;
  std::filesystem::path manifest_path;
};

/// Fixed-L or resolvable-L sweep over s_list; also serves the coherence table
/// when compute_mu is set.
ExperimentResult run_s_sweep(const Config& cfg, const std::filesystem::path& out_dir = {});
ExperimentResult run_coherence_table(const Config& cfg, const std::filesystem::path& out_dir = {});
/// Delta_c < Delta_d in the MagnifiedLE regime, one run per cr_list entry, each
/// paired with a Delta_c = Delta_d run at the same Q.
ExperimentResult run_superres(const Config& cfg, const std::filesystem::path& out_dir = {});
/// SSCSI at s = L Delta_c / (N_d Delta_d beta) against the CASSI baseline over q_list.
ExperimentResult run_comparison(const Config& cfg, const std::filesystem::path& out_dir = {});

/// Dispatches on cfg.get("experiment").
ExperimentResult run_experiment(const Config& cfg, const std::filesystem::path& out_dir = {});

/// Reference cube for an experiment: scene_file when set, else make_scene at `dims`.
Datacube reference_scene(const Config& cfg, CubeDims dims);

struct ReplayOutcome {
  bool identical = false;
  std::vector<std::string> mismatched;  ///< output names whose hash differs
  ExperimentResult result;
};

/// Reruns the experiment recorded in a manifest at its thread count and
/// compares output hashes.
ReplayOutcome replay(const std::filesystem::path& manifest_path,
                     const std::filesystem::path& out_dir);
Config config_from_manifest(const nlohmann::json& manifest);

}  // namespace sscsi::harness
