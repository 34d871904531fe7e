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


#include "sscsi/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <span>

#include "sscsi/coding.hpp"
#include "sscsi/coherence.hpp"
#include "sscsi/errors.hpp"
#include "sscsi/harness/io.hpp"
#include "sscsi/harness/pipeline.hpp"
#include "sscsi/harness/scene.hpp"
#include "sscsi/kernels.hpp"
#include "sscsi/metrics.hpp"
#include "sscsi/parallel.hpp"
#include "sscsi/sensing_matrix.hpp"
#include "sscsi/sparsity.hpp"

namespace sscsi::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string CsvTable::text() const {
  std::string out;
  const auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

Datacube reference_scene(const Config& cfg, CubeDims dims) {
  if (cfg.has("scene_file")) return read_ssc(cfg.get("scene_file"));
  SceneOptions opts;
  opts.checker_block = cfg.get_int("checker_block");
  return make_scene(parse_scene_kind(cfg.get("scene")), dims, opts);
}

namespace {

const std::vector<std::string> kBaseHeader = {"run_id", "s", "q", "cr", "psnr_db", "mu", "seed"};

std::string opt(const std::optional<double>& v) { return v ? format_metric(*v) : ""; }

std::vector<int> shots_for(const Config& cfg, const SystemGeometry& g, const BandGrid& grid) {
  std::vector<int> out;
  if (cfg.has("q_list")) {
    out = cfg.get_int_list("q_list");
  } else if (cfg.has("cr_list")) {
    for (double cr : cfg.get_double_list("cr_list")) out.push_back(shots_for_ratio(cr, g, grid));
  } else if (cfg.get_double("cr") > 0) {
    out.push_back(shots_for_ratio(cfg.get_double("cr"), g, grid));
  } else {
    out.push_back(cfg.get_int("shots"));
  }
  for (int q : out)
    if (q < 1) throw InvalidConfig("shot counts must be positive");
  return out;
}

double rmse(const Datacube& a, const Datacube& b) {
  double se = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    se += d * d;
  }
  return std::sqrt(se / static_cast<double>(a.size()));
}

std::vector<double> stretch(std::span<const double> sig, int n) {
  const Datacube c({1, 1, static_cast<int>(sig.size())}, {sig.begin(), sig.end()});
  const Datacube up = box_resample(c, {1, 1, n});
  return {up.values().begin(), up.values().end()};
}

struct Context {
  explicit Context(const Config& c) : cfg(c) {
    seed = cfg.get_u64("seed");
    opts.solver = cfg.solver();
    opts.levels = cfg.get_int("levels");
    opts.snr_db = cfg.get_optional_double("snr_db");
    compute_mu = cfg.get_bool("compute_mu");
    save_cubes = cfg.get_bool("save_cubes");
  }

  void load_reference(CubeDims dims) {
    reference = reference_scene(cfg, dims);
    if (!cfg.has("scene_file") && parse_scene_kind(cfg.get("scene")) == SceneKind::kSpiky)
      probes = spiky_probes(reference.dims());
  }

  void probe(RunRecord& rec, const Datacube& recovered) const {
    if (probes.empty()) return;
    const CubeDims rd = reference.dims(), cd = recovered.dims();
    double sum = 0.0;
    int defined = 0;
    for (const auto& [x, y] : probes) {
      const int xr = std::min(cd.nx - 1, static_cast<int>((x + 0.5) * cd.nx / rd.nx));
      const int yr = std::min(cd.ny - 1, static_cast<int>((y + 0.5) * cd.ny / rd.ny));
      const auto sig = stretch(recovered.signature(xr, yr), rd.bands);
      try {
        const double r = signature_correlation(reference.signature(x, y), sig);
        rec.r.emplace_back(r);
        sum += r;
        ++defined;
      } catch (const std::domain_error&) {
        rec.r.emplace_back(std::nullopt);
      }
    }
    if (defined > 0) rec.r_mean = sum / defined;
  }

  void note_run(const RunRecord& rec, const SystemGeometry& g, int bands) {
    runs.push_back({{"run_id", rec.run_id},
                    {"architecture", rec.architecture},
                    {"geometry", g.canonical()},
                    {"geometry_hash", hex64(g.hash())},
                    {"shots", rec.shots},
                    {"bands", bands}});
  }

  void save(const fs::path& out_dir, const std::string& name, const Datacube& cube) {
    if (!save_cubes || out_dir.empty()) return;
    const fs::path path = out_dir / (name + ".ssc");
    write_ssc(path, cube);
    outputs[path.filename().string()] = hex64(file_hash(path));
  }

  RunRecord run_sscsi(const SystemGeometry& g, const BandGrid& grid, int shots,
                      const std::string& run_id, Reconstruction* keep = nullptr) {
    const CodedApertureSet codes = generate_boolean_codes(g.n_c(), shots, seed);
    Rng noise = Rng(seed).split("noise/" + run_id);
    Reconstruction rec = reconstruct_sscsi(reference, g, grid, codes, opts, noise);
    RunRecord r;
    r.run_id = run_id;
    r.s = sscsi::to_string(g.s());
    r.shots = shots;
    r.dims = rec.truth.dims();
    r.cr = compression_ratio(shots, g, grid);
    r.psnr_db = rec.psnr_db;
    r.iterations = rec.iterations;
    r.converged = rec.converged;
    if (compute_mu) {
      const SensingMatrix h = assemble(codes, g, grid);
      const SparsityOperator psi(r.dims, opts.levels, true);
      const CoherenceReport rep = coherence(h, psi);
      r.mu = rep.mu;
      r.zero_columns = rep.zero_columns;
    }
    probe(r, rec.recovered);
    note_run(r, g, grid.count);
    if (keep) *keep = std::move(rec);
    return r;
  }

  const Config& cfg;
  std::uint64_t seed = 0;
  ReconstructionOptions opts;
  bool compute_mu = false;
  bool save_cubes = false;
  Datacube reference;
  std::vector<std::pair<int, int>> probes;
  json runs = json::array();
  std::map<std::string, std::string> outputs;
};

std::vector<std::string> base_row(const RunRecord& r, std::uint64_t seed) {
  return {r.run_id, r.s, std::to_string(r.shots), format_metric(r.cr), format_metric(r.psnr_db),
          opt(r.mu), std::to_string(seed)};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string gnuplot_stub(const std::string& csv, int x_col, int y_col, const std::string& xlabel) {
  return "set datafile separator ','\nset key autotitle columnhead\nset xlabel '" + xlabel +
         "'\nset ylabel 'PSNR (dB)'\nplot '" + csv + "' using " + std::to_string(x_col) + ":" +
         std::to_string(y_col) + " with linespoints\n";
}

ExperimentResult finish(Context& ctx, const std::string& name, CsvTable table,
                        std::vector<RunRecord> runs, const fs::path& out_dir, int x_col,
                        const std::string& xlabel) {
  ExperimentResult res;
  res.experiment = name;
  res.runs = std::move(runs);
  res.table = std::move(table);
  const std::string csv_name = name + ".csv";
  const std::string text = res.table.text();
  ctx.outputs[csv_name] = hex64(fnv1a({reinterpret_cast<const unsigned char*>(text.data()), text.size()}));

  const Config& cfg = ctx.cfg;
  json m;
  m["tool"] = "sscsi";
  m["version"] = kToolVersion;
  m["experiment"] = cfg.get("experiment");
  m["config"] = cfg.values();
  m["threads"] = thread_count();
  m["kernels"] = kernels::active().name;
  m["code_seed"] = ctx.seed;
  const SolverConfig& sc = ctx.opts.solver;
  m["solver"] = {{"tau", sc.tau},
                 {"max_iters", sc.max_iters},
                 {"tolerance", sc.tolerance},
                 {"step_rule", sc.step_rule == StepRule::kFixed ? "fixed" : "bb"},
                 {"monotone", sc.monotone},
                 {"power_iters", sc.power_iters},
                 {"levels", ctx.opts.levels}};
  json inputs;
  inputs["scene"] = cfg.has("scene_file") ? "file" : cfg.get("scene");
  inputs["scene_hash"] = hex64(cube_hash(ctx.reference));
  if (cfg.has("scene_file")) {
    inputs["scene_file"] = cfg.get("scene_file");
    inputs["scene_file_hash"] = hex64(file_hash(cfg.get("scene_file")));
  }
  m["inputs"] = inputs;
  m["runs"] = ctx.runs;
  m["outputs"] = ctx.outputs;
  res.manifest = m;

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    res.csv_path = out_dir / csv_name;
    write_text(res.csv_path, text);
    write_text(out_dir / (name + ".gp"), gnuplot_stub(csv_name, x_col, 5, xlabel));
    res.manifest_path = out_dir / "manifest.json";
    write_text(res.manifest_path, m.dump(2) + "\n");
  }
  return res;
}

ExperimentResult sweep(const Config& cfg, const fs::path& out_dir, const std::string& name) {
  Context ctx(cfg);
  const auto s_list = cfg.get_list("s_list");
  if (s_list.empty()) throw InvalidConfig("s_list is empty");
  struct Plan {
    SystemGeometry g;
    BandGrid grid;
    std::vector<int> shots;
  };
  std::vector<Plan> plans;
  CubeDims finest{0, 0, cfg.get_int("ref_bands")};
  for (const auto& text : s_list) {
    Plan p{cfg.geometry(parse_rational(text)), {}, {}};
    p.grid = cfg.band_grid(p.g);
    p.shots = shots_for(cfg, p.g, p.grid);
    const CubeDims d = recovered_dims(p.g, p.grid);
    finest.nx = std::max(finest.nx, d.nx);
    finest.ny = std::max(finest.ny, d.ny);
    finest.bands = std::max(finest.bands, d.bands);
    plans.push_back(std::move(p));
  }
  ctx.load_reference(finest);

  CsvTable table;
  table.header = kBaseHeader;
  table.header.insert(table.header.end(), {"bands", "iterations"});
  if (!ctx.probes.empty()) {
    table.header.push_back("r_mean");
    for (std::size_t i = 0; i < ctx.probes.size(); ++i)
      table.header.push_back("r_probe" + std::to_string(i));
  }
  std::vector<RunRecord> runs;
  for (const Plan& p : plans)
    for (int q : p.shots) {
      Reconstruction rec;
      RunRecord r = ctx.run_sscsi(p.g, p.grid, q, name + "-" + std::to_string(runs.size()), &rec);
      ctx.save(out_dir, r.run_id, rec.recovered);
      auto row = base_row(r, ctx.seed);
      row.push_back(std::to_string(r.dims.bands));
      row.push_back(std::to_string(r.iterations));
      if (!ctx.probes.empty()) {
        row.push_back(opt(r.r_mean));
        for (const auto& v : r.r) row.push_back(v ? format_metric(*v) : "nan");
      }
      table.rows.push_back(std::move(row));
      runs.push_back(std::move(r));
    }
  return finish(ctx, name, std::move(table), std::move(runs), out_dir, 2, "s");
}

}  // namespace

ExperimentResult run_s_sweep(const Config& cfg, const fs::path& out_dir) {
  return sweep(cfg, out_dir, "sweep-s");
}

ExperimentResult run_coherence_table(const Config& cfg, const fs::path& out_dir) {
  return sweep(cfg, out_dir, "coherence");
}

ExperimentResult run_superres(const Config& cfg, const fs::path& out_dir) {
  Context ctx(cfg);
  const SystemGeometry g = cfg.geometry(cfg.get_rational("s"));
  if (g.regime() != Regime::kMagnifiedLE)
    throw InvalidConfig(std::string("super-resolution needs the magnified-le regime, got ") +
                        sscsi::to_string(g.regime()));
  const BandGrid grid = cfg.band_grid(g);
  const CubeDims dims = recovered_dims(g, grid);
  Config base_cfg = cfg;
  base_cfg.set("delta_c", cfg.get("delta_d"));
  const SystemGeometry gb = base_cfg.geometry(g.s());
  const BandGrid grid_b = BandGrid::uniform(gb, grid.count);
  ctx.load_reference(dims);

  CsvTable table;
  table.header = kBaseHeader;
  table.header.insert(table.header.end(),
                      {"nx", "ny", "bands", "iterations", "rmse", "rmse_upsampled"});
  std::vector<RunRecord> runs;
  for (int q : shots_for(cfg, g, grid)) {
    const std::string id = "superres-" + std::to_string(runs.size());
    Reconstruction fine, coarse;
    RunRecord r = ctx.run_sscsi(g, grid, q, id, &fine);
    const bool mu = ctx.compute_mu;
    ctx.compute_mu = false;
    RunRecord base = ctx.run_sscsi(gb, grid_b, q, id + "-pitch-matched", &coarse);
    ctx.compute_mu = mu;
    r.rmse = rmse(fine.truth, fine.recovered);
    r.rmse_upsampled = rmse(fine.truth, box_resample(coarse.recovered, dims));
    ctx.save(out_dir, id, fine.recovered);
    auto row = base_row(r, ctx.seed);
    row.insert(row.end(), {std::to_string(r.dims.nx), std::to_string(r.dims.ny),
                           std::to_string(r.dims.bands), std::to_string(r.iterations),
                           opt(r.rmse), opt(r.rmse_upsampled)});
    table.rows.push_back(std::move(row));
    runs.push_back(std::move(r));
  }
  return finish(ctx, "superres", std::move(table), std::move(runs), out_dir, 4, "CR");
}

ExperimentResult run_comparison(const Config& cfg, const fs::path& out_dir) {
  Context ctx(cfg);
  const int bands = cfg.get_int("bands");
  if (bands < 1) throw InvalidConfig("compare needs bands >= 1");
  const Rational dc = cfg.get_rational("delta_c"), dd = cfg.get_rational("delta_d");
  if (dc != dd) throw InvalidConfig("compare needs delta_c == delta_d");
  const Rational s = Rational(bands) * dc / (dd * cfg.get_int("n_d") * cfg.get_rational("beta"));
  if (s > 1) throw InvalidConfig("too many bands for this detector: s would exceed 1");
  const SystemGeometry g = cfg.geometry(s);
  const BandGrid grid = BandGrid::resolvable(g);
  if (grid.count != bands) throw InvalidConfig("resolvable band count does not match bands");
  const int n = g.n_d();
  ctx.load_reference({n, n, bands});

  CsvTable table;
  table.header = kBaseHeader;
  table.header.insert(table.header.end(), {"architecture", "iterations"});
  std::vector<RunRecord> runs;
  for (int q : shots_for(cfg, g, grid)) {
    RunRecord a = ctx.run_sscsi(g, grid, q, "compare-sscsi-q" + std::to_string(q));
    RunRecord b;
    b.run_id = "compare-cassi-q" + std::to_string(q);
    b.architecture = "cassi";
    b.shots = q;
    b.dims = {n, n, bands};
    b.cr = static_cast<double>(q) * n * (n + bands - 1) / static_cast<double>(b.dims.voxels());
    {
      const CodedApertureSet codes = generate_boolean_codes(g.n_c(), q, ctx.seed);
      Rng noise = Rng(ctx.seed).split("noise/" + b.run_id);
      const Reconstruction rec = reconstruct_cassi(ctx.reference, g, bands, codes, ctx.opts, noise);
      b.psnr_db = rec.psnr_db;
      b.iterations = rec.iterations;
      b.converged = rec.converged;
      ctx.note_run(b, g, bands);
    }
    for (const RunRecord* r : {&a, &b}) {
      auto row = base_row(*r, ctx.seed);
      row.insert(row.end(), {r->architecture, std::to_string(r->iterations)});
      table.rows.push_back(std::move(row));
    }
    runs.push_back(std::move(a));
    runs.push_back(std::move(b));
  }
  return finish(ctx, "compare", std::move(table), std::move(runs), out_dir, 3, "Q");
}

ExperimentResult run_experiment(const Config& cfg, const fs::path& out_dir) {
  const std::string& e = cfg.get("experiment");
  if (e == "sweep-s") return run_s_sweep(cfg, out_dir);
  if (e == "coherence") return run_coherence_table(cfg, out_dir);
  if (e == "superres") return run_superres(cfg, out_dir);
  if (e == "compare") return run_comparison(cfg, out_dir);
  throw InvalidConfig("unknown experiment '" + e + "'");
}

Config config_from_manifest(const json& manifest) {
  Config c;
  try {
    for (const auto& [key, value] : manifest.at("config").items()) c.set(key, value.get<std::string>());
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("manifest config: ") + e.what());
  }
  return c;
}

ReplayOutcome replay(const fs::path& manifest_path, const fs::path& out_dir) {
  std::ifstream in(manifest_path);
  if (!in) throw InvalidConfig("cannot read manifest " + manifest_path.string());
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("manifest: ") + e.what());
  }
  const Config cfg = config_from_manifest(m);
  if (m.contains("threads")) set_thread_count(m.at("threads").get<int>());
  if (m.contains("kernels")) kernels::force_variant(m.at("kernels").get<std::string>().c_str());
  ReplayOutcome out;
  out.result = run_experiment(cfg, out_dir);
  const json& want = m.at("outputs");
  const json& got = out.result.manifest.at("outputs");
  for (const auto& [name, hash] : want.items())
    if (!got.contains(name) || got.at(name) != hash) out.mismatched.push_back(name);
  for (const auto& [name, hash] : got.items())
    if (!want.contains(name)) out.mismatched.push_back(name);
  out.identical = out.mismatched.empty();
  return out;
}

}  // namespace sscsi::harness
