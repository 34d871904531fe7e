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


#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sscsi/coding.hpp"
#include "sscsi/errors.hpp"
#include "sscsi/forward_model.hpp"
#include "sscsi/harness/config.hpp"
#include "sscsi/harness/experiments.hpp"
#include "sscsi/harness/io.hpp"
#include "sscsi/harness/pipeline.hpp"
#include "sscsi/harness/scene.hpp"
#include "sscsi/linear_operator.hpp"
#include "sscsi/metrics.hpp"
#include "sscsi/parallel.hpp"
#include "sscsi/sensing_matrix.hpp"
#include "sscsi/sparsity.hpp"

namespace fs = std::filesystem;
using namespace sscsi;
using namespace sscsi::harness;

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_dir = ".";
  std::optional<double> snr_db;
  std::vector<std::string> assignments;
};

Config resolve(const Globals& g, Config c) {
  if (!g.config_file.empty()) c.merge_file(g.config_file);
  for (const auto& a : g.assignments) c.set_assignment(a);
  if (g.seed) c.set("seed", std::to_string(*g.seed));
  if (g.snr_db) c.set("snr_db", format_metric(*g.snr_db));
  return c;
}

CodedApertureSet load_codes(const Config& cfg, const SystemGeometry& g, const std::string& dir) {
  if (!dir.empty()) return read_mask_set(dir);
  return generate_boolean_codes(g.n_c(), cfg.get_int("shots"), cfg.get_u64("seed"));
}

// measurement frames travel as .ssc with dims (rows, cols, shots)
Datacube frames_to_cube(const MeasurementSet& y) {
  return Datacube({y.rows(), y.cols(), y.shots()}, {y.values().begin(), y.values().end()});
}

MeasurementSet cube_to_frames(const Datacube& c) {
  return MeasurementSet(c.dims().bands, c.dims().nx, c.dims().ny,
                        {c.values().begin(), c.values().end()});
}

void print_experiment(const ExperimentResult& r) {
  std::cout << r.table.text();
  if (!r.csv_path.empty())
    std::cerr << "wrote " << r.csv_path.string() << " and " << r.manifest_path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SSCSI simulator: forward model, sensing matrix, GPSR reconstruction, experiments"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_file, "key=value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "code seed");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--snr-db", g.snr_db, "add white Gaussian noise to measurements");
  app.add_option("--set", g.assignments, "override one config key (key=value), repeatable");

  // scene
  auto* scene = app.add_subcommand("scene", "write a synthetic .ssc cube");
  std::string scene_kind = "smooth", scene_out;
  int nx = 64, ny = 64, bands = 8, block = 0;
  scene->add_option("--kind", scene_kind, "smooth | spiky | checker | target");
  scene->add_option("--nx", nx);
  scene->add_option("--ny", ny);
  scene->add_option("--bands", bands);
  scene->add_option("--checker-block", block);
  scene->add_option("-o,--output", scene_out, "default <out-dir>/scene.ssc");

  // codes
  auto* codes_cmd = app.add_subcommand("codes", "generate boolean codes and dump PGM masks");
  int n_c = 64, shots = 2;
  codes_cmd->add_option("--n-c", n_c);
  codes_cmd->add_option("--shots", shots);

  // assemble
  auto* assemble_cmd = app.add_subcommand("assemble", "assemble H for the configured geometry");
  std::string codes_dir, ssm_out;
  assemble_cmd->add_option("--codes", codes_dir, "mask directory from 'codes'");
  assemble_cmd->add_option("-o,--output", ssm_out, "default <out-dir>/H.ssm");

  // sense
  auto* sense_cmd = app.add_subcommand("sense", "simulate detector frames for a cube");
  std::string cube_in, frames_out;
  sense_cmd->add_option("--cube", cube_in, ".ssc input")->required()->check(CLI::ExistingFile);
  sense_cmd->add_option("--codes", codes_dir);
  sense_cmd->add_option("-o,--output", frames_out, "default <out-dir>/measurements.ssc");

  // reconstruct
  auto* recon_cmd = app.add_subcommand("reconstruct", "GPSR reconstruction from frames");
  std::string frames_in, truth_in, recon_out;
  recon_cmd->add_option("--measurements", frames_in)->required()->check(CLI::ExistingFile);
  recon_cmd->add_option("--codes", codes_dir);
  recon_cmd->add_option("--truth", truth_in, "reference cube for PSNR")->check(CLI::ExistingFile);
  recon_cmd->add_option("-o,--output", recon_out, "default <out-dir>/recovered.ssc");

  // experiments
  auto* sweep_cmd = app.add_subcommand("sweep-s", "PSNR and |r| across coded-aperture positions");
  bool zoom = false;
  sweep_cmd->add_flag("--zoom", zoom, "resolvable band count per s (spectral zooming preset)");
  auto* superres_cmd = app.add_subcommand("superres", "super-resolution PSNR against CR");
  auto* compare_cmd = app.add_subcommand("compare", "SSCSI against the CASSI baseline over Q");
  auto* coherence_cmd = app.add_subcommand("coherence", "coherence and PSNR table over s");

  auto* replay_cmd = app.add_subcommand("replay", "rerun an experiment from its manifest");
  std::string manifest_in;
  replay_cmd->add_option("--manifest", manifest_in)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalidConfig;
  }

  try {
    set_thread_count(g.threads);
    const fs::path out_dir = g.out_dir;
    const auto out_path = [&](const std::string& given, const char* fallback) {
      fs::create_directories(out_dir);
      return given.empty() ? out_dir / fallback : fs::path(given);
    };

    if (*scene) {
      SceneOptions opts;
      opts.checker_block = block;
      const Datacube c = make_scene(parse_scene_kind(scene_kind), {nx, ny, bands}, opts);
      const fs::path p = out_path(scene_out, "scene.ssc");
      write_ssc(p, c);
      std::cout << p.string() << '\n';
    } else if (*codes_cmd) {
      const Config cfg = resolve(g, Config());
      const CodedApertureSet codes = generate_boolean_codes(n_c, shots, cfg.get_u64("seed"));
      write_mask_set(out_dir / "masks", codes);
      std::cout << (out_dir / "masks").string() << '\n';
    } else if (*assemble_cmd) {
      const Config cfg = resolve(g, Config());
      const SystemGeometry geo = cfg.geometry(cfg.get_rational("s"));
      const SensingMatrix h = assemble(load_codes(cfg, geo, codes_dir), geo, cfg.band_grid(geo));
      const fs::path p = out_path(ssm_out, "H.ssm");
      write_ssm(p.string(), h);
      std::cout << p.string() << ": " << h.rows() << " x " << h.cols() << ", nnz " << h.nnz() << '\n';
    } else if (*sense_cmd) {
      const Config cfg = resolve(g, Config());
      const SystemGeometry geo = cfg.geometry(cfg.get_rational("s"));
      const Datacube cube = read_ssc(cube_in);
      MeasurementSet y = sense(cube, load_codes(cfg, geo, codes_dir), geo, cfg.band_grid(geo));
      if (cfg.has("snr_db")) {
        Rng rng = Rng(cfg.get_u64("seed")).split("noise/sense");
        add_noise(y.values(), cfg.get_double("snr_db"), rng);
      }
      const fs::path p = out_path(frames_out, "measurements.ssc");
      write_ssc(p, frames_to_cube(y));
      std::cout << p.string() << '\n';
    } else if (*recon_cmd) {
      const Config cfg = resolve(g, Config());
      const SystemGeometry geo = cfg.geometry(cfg.get_rational("s"));
      const BandGrid grid = cfg.band_grid(geo);
      const MeasurementSet y = cube_to_frames(read_ssc(frames_in));
      const SensingMatrix h = assemble(load_codes(cfg, geo, codes_dir), geo, grid);
      if (static_cast<std::int64_t>(y.size()) != h.rows())
        throw InvalidConfig("measurement frames do not match the configured geometry and codes");
      const CubeDims dims = recovered_dims(geo, grid);
      const SparsityOperator psi(dims, cfg.get_int("levels"), true);
      const ProductOperator a(h, psi);
      const SolveReport rep = gpsr_solve(a, y.values(), cfg.solver());
      const Datacube rec(dims, psi * std::span<const double>(rep.coeffs));
      const fs::path p = out_path(recon_out, "recovered.ssc");
      write_ssc(p, rec);
      write_trace_csv((out_dir / "trace.csv").string(), rep.trace);
      std::cout << p.string() << ": " << rep.iterations << " iterations"
                << (rep.converged ? "" : " (not converged)");
      if (!truth_in.empty()) std::cout << ", psnr_db " << format_metric(psnr(read_ssc(truth_in), rec));
      std::cout << '\n';
    } else if (*sweep_cmd) {
      print_experiment(run_experiment(resolve(g, Config::for_experiment(zoom ? "zoom" : "sweep-s")), out_dir));
    } else if (*superres_cmd) {
      print_experiment(run_experiment(resolve(g, Config::for_experiment("superres")), out_dir));
    } else if (*compare_cmd) {
      print_experiment(run_experiment(resolve(g, Config::for_experiment("compare")), out_dir));
    } else if (*coherence_cmd) {
      print_experiment(run_experiment(resolve(g, Config::for_experiment("coherence")), out_dir));
    } else if (*replay_cmd) {
      const ReplayOutcome r = replay(manifest_in, out_dir);
      print_experiment(r.result);
      if (!r.identical) {
        for (const auto& name : r.mismatched) std::cerr << "replay mismatch: " << name << '\n';
        return 1;
      }
      std::cerr << "replay identical\n";
    }
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
