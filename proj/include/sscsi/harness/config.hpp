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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sscsi/geometry.hpp"
#include "sscsi/rational.hpp"
#include "sscsi/solver.hpp"

namespace sscsi::harness {

/// Flat key=value experiment settings. Every key has a default; unknown keys
/// are rejected. Values stay as text so a manifest can reproduce them exactly.
class Config {
 public:
  /// Library-wide defaults.
  Config();
  /// Defaults with the preset for one experiment layered on top. "zoom" is
  /// the sweep-s preset at the resolvable band count.
  static Config for_experiment(const std::string& experiment);

  void set(const std::string& key, const std::string& value);
  /// "key=value"
  void set_assignment(const std::string& assignment);
  /// Lines of key=value; '#' starts a comment; blank lines skipped.
  void merge_file(const std::filesystem::path& path);
  void merge_text(const std::string& text, const std::string& origin = "<text>");

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  int get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  Rational get_rational(const std::string& key) const;
  /// Comma separated; empty value gives an empty list.
  std::vector<std::string> get_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::optional<double> get_optional_double(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  static const std::vector<std::string>& known_keys();

  /// Geometry from n_d, delta_c, delta_d, beta, lambda_min, lambda_max and the given s.
  SystemGeometry geometry(const Rational& s) const;
  /// Uniform grid of `bands` bands, or of the resolvable count when bands = 0.
  BandGrid band_grid(const SystemGeometry& g) const;
  /// Solver settings from tau, max_iters, tolerance, step_rule, monotone, power_iters.
  SolverConfig solver() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sscsi::harness
