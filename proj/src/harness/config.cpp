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


#include "sscsi/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sscsi/errors.hpp"

namespace sscsi::harness {

namespace {

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d = {
      {"experiment", ""},
      {"scene", "smooth"},
      {"scene_file", ""},
      {"checker_block", "0"},
      {"n_d", "64"},
      {"delta_c", "1"},
      {"delta_d", "1"},
      {"beta", "1"},
      {"lambda_min", "400"},
      {"lambda_max", "700"},
      {"s", "1/8"},
      {"s_list", ""},
      {"bands", "8"},
      {"ref_bands", "0"},
      {"shots", "6"},
      {"q_list", ""},
      {"cr", "0"},
      {"cr_list", ""},
      {"seed", "42"},
      {"tau", "1e-3"},
      {"max_iters", "5000"},
      {"tolerance", "1e-9"},
      {"step_rule", "bb"},
      {"monotone", "false"},
      {"power_iters", "20"},
      {"levels", "3"},
      {"snr_db", ""},
      {"compute_mu", "false"},
      {"save_cubes", "false"},
  };
  return d;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw InvalidConfig("config key '" + key + "': cannot parse '" + text + "'");
  return v;
}

}  // namespace

Config::Config() : values_(defaults()) {}

Config Config::for_experiment(const std::string& experiment) {
  Config c;
  c.set("experiment", experiment);
  if (experiment == "coherence") {
    c.set("s_list", "0,1/100,2/100,3/100,5/100,7/100");
    c.set("compute_mu", "true");
  } else if (experiment == "sweep-s") {
    c.set("scene", "spiky");
    c.set("s_list", "1/1000,2/75,1/10,1/4,2/5,3/4,9/10,99/100");
  } else if (experiment == "zoom") {
    // spectral zooming is an s-sweep at the resolvable band count
    c.set("experiment", "sweep-s");
    c.set("scene", "spiky");
    c.set("s_list", "1/8,3/8,3/4");
    c.set("bands", "0");
    c.set("ref_bands", "128");
    c.set("cr", "0.2");
  } else if (experiment == "superres") {
    c.set("scene", "target");
    c.set("n_d", "32");
    c.set("delta_c", "1");
    c.set("delta_d", "2");
    c.set("cr_list", "0.1,0.2,0.3,0.4");
  } else if (experiment == "compare") {
    c.set("q_list", "1,2,3,4,5,6");
  }
  return c;
}

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [key, value] : defaults()) k.push_back(key);
    return k;
  }();
  return keys;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!defaults().contains(key)) throw InvalidConfig("unknown config key '" + key + "'");
  values_[key] = trim(value);
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw InvalidConfig("expected key=value, got '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void Config::merge_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      set_assignment(line);
    } catch (const InvalidConfig& e) {
      throw InvalidConfig(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void Config::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path.string());
}

bool Config::has(const std::string& key) const {
  const auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

const std::string& Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidConfig("unknown config key '" + key + "'");
  return it->second;
}

int Config::get_int(const std::string& key) const { return parse_number<int>(key, get(key)); }

std::uint64_t Config::get_u64(const std::string& key) const {
  return parse_number<std::uint64_t>(key, get(key));
}

double Config::get_double(const std::string& key) const {
  return parse_number<double>(key, get(key));
}

bool Config::get_bool(const std::string& key) const {
  const std::string& v = get(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidConfig("config key '" + key + "': expected a boolean, got '" + v + "'");
}

Rational Config::get_rational(const std::string& key) const {
  try {
    return parse_rational(get(key));
  } catch (const std::exception& e) {
    throw InvalidConfig("config key '" + key + "': " + e.what());
  }
}

std::vector<std::string> Config::get_list(const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream in(get(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : get_list(key)) out.push_back(parse_number<int>(key, item));
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : get_list(key)) out.push_back(parse_number<double>(key, item));
  return out;
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key);
}

SystemGeometry Config::geometry(const Rational& s) const {
  GeometryParams p;
  p.s = s;
  p.delta_c_um = get_rational("delta_c");
  p.delta_d_um = get_rational("delta_d");
  p.n_d = get_int("n_d");
  p.lambda_min_nm = get_rational("lambda_min");
  p.lambda_max_nm = get_rational("lambda_max");
  p.beta = get_rational("beta");
  if (p.delta_c_um <= 0 || p.delta_d_um <= 0) throw InvalidConfig("pitches must be positive");
  const Rational n_c = p.delta_d_um * p.n_d / p.delta_c_um;
  if (!is_integer(n_c)) throw InvalidConfig("n_d * delta_d / delta_c must be an integer");
  p.n_c = static_cast<int>(floor_to_int(n_c));
  return SystemGeometry::create(p);
}

BandGrid Config::band_grid(const SystemGeometry& g) const {
  const int bands = get_int("bands");
  if (bands < 0) throw InvalidConfig("bands must be >= 0");
  if (bands > 0) return BandGrid::uniform(g, bands);
  if (g.s() == 0 || g.alpha() == 0) return BandGrid::uniform(g, 1);
  return BandGrid::uniform(g, band_count(g));
}

SolverConfig Config::solver() const {
  SolverConfig c;
  c.tau = get_double("tau");
  c.max_iters = get_int("max_iters");
  c.tolerance = get_double("tolerance");
  const std::string& rule = get("step_rule");
  if (rule == "bb") {
    c.step_rule = StepRule::kBarzilaiBorwein;
  } else if (rule == "fixed") {
    c.step_rule = StepRule::kFixed;
  } else {
    throw InvalidConfig("step_rule must be 'bb' or 'fixed'");
  }
  c.monotone = get_bool("monotone");
  c.power_iters = get_int("power_iters");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidConfig(e.what());
  }
  return c;
}

}  // namespace sscsi::harness
