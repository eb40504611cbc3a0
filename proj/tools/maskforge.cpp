// Copyright 2026 The maskforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// maskforge command-line tool: mask, synth and eval subcommands.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maskforge/config.hpp"
#include "maskforge/error.hpp"
#include "maskforge/eval.hpp"
#include "maskforge/pipeline.hpp"
#include "maskforge/pnm.hpp"
#include "maskforge/synth.hpp"

namespace fs = std::filesystem;
using namespace maskforge;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPipeline = 2;
constexpr int kMaxRecursion = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, "bad " + what + " '" + s + "'");
  return v;
}

PipelineConfig config_or_default(const std::string& path) {
  return path.empty() ? PipelineConfig{} : load_config(path);
}

json provenance_json(const RegionMaskSet& set, const PipelineConfig& cfg, const GrayImage& input) {
  const auto& p = set.provenance;
  return {
      {"input", {{"width", input.width()}, {"height", input.height()}}},
      {"pad", p.pad},
      {"contrast", p.contrast},
      {"gain", p.gain},
      {"overlap_threshold", p.overlap_threshold},
      {"fg_threshold", p.fg_threshold},
      {"angle_deg", p.angle_deg},
      {"line_length", p.line_length},
      {"components", set.components.size()},
      {"config", to_json(cfg)},
  };
}

void write_masks(const fs::path& out, const GrayImage& input, const RunResult& result, const PipelineConfig& cfg) {
  fs::create_directories(out);
  const RegionMaskSet& set = result.masks;
  const Margins m = Margins::uniform(set.provenance.pad);
  save_mask(out / "foreground.pgm", crop(set.foreground, m));
  save_mask(out / "overlap.pgm", crop(set.overlap, m));
  RegionMaskSet cropped{crop(set.foreground, m), crop(set.overlap, m), {}, set.provenance};
  for (std::size_t i = 0; i < set.components.size(); ++i) {
    cropped.components.push_back(crop(set.components[i], m));
    save_mask(out / ("component_" + std::to_string(i) + ".pgm"), cropped.components.back());
  }
  save_ppm(out / "reconstruction.ppm", reconstruct(cropped));
  write_text_file(out / "provenance.json", provenance_json(set, cfg, input).dump(2) + "\n");
  if (result.trace) {
    for (const auto& [stage, image] : *result.trace) save_pgm(out / ("stage_" + stage + ".pgm"), image);
  }
}

int cmd_mask(const std::string& input_path, const fs::path& out, const std::string& config_path, bool trace,
             bool recurse) {
  const PipelineConfig cfg = config_or_default(config_path);
  GrayImage input = load_pgm(input_path);
  const RunResult result = run(input, cfg, trace);
  write_masks(out, input, result, cfg);
  std::cout << "components: " << result.masks.components.size() << "  angle: " << result.masks.provenance.angle_deg
            << "  length: " << result.masks.provenance.line_length << "\n";

  if (!recurse) return kExitOk;
  // Re-run on the overlap alone to separate sub-overlaps (three prints).
  fs::path dir = out;
  RegionMaskSet current = result.masks;
  for (int depth = 1; depth <= kMaxRecursion; ++depth) {
    const BinaryMask overlap = crop(current.overlap, Margins::uniform(current.provenance.pad));
    GrayImage sub(input.width(), input.height(), 255);
    for (int y = 0; y < input.height(); ++y)
      for (int x = 0; x < input.width(); ++x)
        if (overlap(y, x)) sub(y, x) = input(y, x);
    dir /= "overlap";
    try {
      const RunResult inner = run(sub, cfg, false);
      write_masks(dir, sub, inner, cfg);
      std::cout << "level " << depth << ": " << inner.masks.components.size() << " sub-regions in " << dir.string()
                << "\n";
      current = inner.masks;
      input = sub;
    } catch (const Error& e) {
      std::cout << "level " << depth << ": no further split (" << to_string(e.code()) << ")\n";
      break;
    }
  }
  return kExitOk;
}

struct SynthArgs {
  std::string prints;
  std::string generate;
  std::string rotate;
  std::string offset;
  std::string noise = "none";
  std::string canvas = "640x480";
  std::optional<std::uint64_t> seed;
  int count = 1;
  std::string out;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MASKFORGE_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "MASKFORGE_SEED is not an unsigned integer");
  }
  return 1;
}

int cmd_synth(const SynthArgs& a) {
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const NoiseSpec noise = NoiseSpec::parse(a.noise);
  const auto canvas = split(a.canvas, 'x');
  if (canvas.size() != 2) throw Error(ErrorCode::InvalidArgument, "canvas must be WxH");
  const int cw = parse_int(canvas[0], "canvas width");
  const int ch = parse_int(canvas[1], "canvas height");
  if (a.prints.empty() == a.generate.empty())
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --prints or --generate");

  std::vector<double> rotations;
  for (const auto& r : split(a.rotate, ',')) rotations.push_back(parse_double(r, "rotation"));
  std::vector<Offset> offsets;
  for (const auto& o : split(a.offset, ',')) {
    const auto parts = split(o, ':');
    if (parts.size() != 2) throw Error(ErrorCode::InvalidArgument, "offset must be dy:dx, got '" + o + "'");
    offsets.push_back({parse_int(parts[0], "offset"), parse_int(parts[1], "offset")});
  }
  const bool manual = !rotations.empty() || !offsets.empty();
  if (a.count < 1) throw Error(ErrorCode::InvalidArgument, "--count must be positive");
  if (manual && a.count != 1) throw Error(ErrorCode::InvalidArgument, "--count needs the automatic layout");

  auto compose_manual = [&](const std::vector<GrayImage>& prints, std::vector<double> orientations) {
    if (rotations.size() != prints.size() || offsets.size() != prints.size())
      throw Error(ErrorCode::InvalidArgument, "need one --rotate and one --offset entry per print");
    OverlapFixture fx = compose_overlap(prints, rotations, offsets, cw, ch);
    fx.params.orientations_deg = std::move(orientations);
    fx.params.seed = seed;
    return with_noise(std::move(fx), noise, seed);
  };

  if (!a.prints.empty()) {
    std::vector<GrayImage> prints;
    for (const auto& p : split(a.prints, ',')) prints.push_back(load_pgm(p));
    const OverlapFixture fx = compose_manual(prints, {});
    save_fixture(a.out, fx);
    std::cout << "wrote " << a.out << (fx.params.degenerate ? " (degenerate)" : "") << "\n";
    return kExitOk;
  }

  // <n>x<W>:<H>[:<period>]
  const auto nx = a.generate.find('x');
  if (nx == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--generate expects <n>x<W>:<H>[:<period>]");
  GenerateOptions opts;
  opts.prints = parse_int(a.generate.substr(0, nx), "print count");
  const auto dims = split(a.generate.substr(nx + 1), ':');
  if (dims.size() < 2 || dims.size() > 3)
    throw Error(ErrorCode::InvalidArgument, "--generate expects <n>x<W>:<H>[:<period>]");
  opts.print_width = parse_int(dims[0], "print width");
  opts.print_height = parse_int(dims[1], "print height");
  if (dims.size() == 3) opts.ridge_period = parse_double(dims[2], "ridge period");
  opts.canvas_width = cw;
  opts.canvas_height = ch;
  opts.noise = noise;

  if (manual) {
    std::vector<GrayImage> prints;
    std::vector<double> orientations;
    for (int i = 0; i < opts.prints; ++i) {
      orientations.push_back(std::fmod(60.0 * i + static_cast<double>(seed % 180), 180.0));
      prints.push_back(
          synthetic_print(opts.print_width, opts.print_height, opts.ridge_period, orientations.back(), seed * 10 + i));
    }
    const OverlapFixture fx = compose_manual(prints, orientations);
    save_fixture(a.out, fx);
    std::cout << "wrote " << a.out << (fx.params.degenerate ? " (degenerate)" : "") << "\n";
    return kExitOk;
  }

  if (a.count == 1) {
    save_fixture(a.out, generate_fixture(seed, opts));
    std::cout << "wrote " << a.out << "\n";
    return kExitOk;
  }
  for (int i = 0; i < a.count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "fixture_%03d", i);
    save_fixture(fs::path(a.out) / name, generate_fixture(seed + static_cast<std::uint64_t>(i), opts));
  }
  std::cout << "wrote " << a.count << " fixtures under " << a.out << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& fixtures, const std::string& config_path, const std::string& out, int jobs) {
  const PipelineConfig cfg = config_or_default(config_path);
  const EvalReport report = evaluate_directory(fixtures, cfg, jobs);
  write_text_file(out, serialize(report));
  const auto& a = report.aggregate;
  std::cout << "fixtures " << a.fixtures << "  ok " << a.ok << "  passed " << a.passed << "  overlap IoU mean "
            << a.overlap_iou.mean << "  component IoU mean " << a.component_iou.mean << "  coverage mean "
            << a.coverage.mean << "  median runtime " << a.median_runtime_ms << " ms\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Region masking for overlapped fingerprints"};
  app.require_subcommand(1);

  std::string mask_input, mask_out, mask_config;
  bool mask_trace = false, mask_recurse = false;
  auto* mask = app.add_subcommand("mask", "Segment one overlapped print into overlap and per-finger masks");
  mask->add_option("input", mask_input, "Input PGM")->required();
  mask->add_option("-o,--out", mask_out, "Output directory")->required();
  mask->add_option("--config", mask_config, "Pipeline config JSON");
  mask->add_flag("--trace", mask_trace, "Also write every intermediate stage");
  mask->add_flag("--recurse-overlap", mask_recurse, "Re-run on the overlap to split sub-overlaps");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Build an overlapped fixture with ground truth");
  synth->add_option("--prints", synth_args.prints, "Comma-separated single-print PGMs");
  synth->add_option("--generate", synth_args.generate, "Synthetic prints: <n>x<W>:<H>[:<period>]");
  synth->add_option("--rotate", synth_args.rotate, "Rotation per print in degrees, comma-separated");
  synth->add_option("--offset", synth_args.offset, "Offset per print as dy:dx, comma-separated");
  synth->add_option("--noise", synth_args.noise, "none | gaussian:S | saltpepper:D | poisson | speckle:V");
  synth->add_option("--canvas", synth_args.canvas, "Canvas size WxH")->capture_default_str();
  synth->add_option("--seed", synth_args.seed, "RNG seed (default: MASKFORGE_SEED or 1)");
  synth->add_option("--count", synth_args.count, "Number of fixtures to write (automatic layout only)");
  synth->add_option("-o,--out", synth_args.out, "Output fixture directory")->required();

  std::string eval_fixtures, eval_config, eval_out;
  int eval_jobs = 1;
  auto* eval = app.add_subcommand("eval", "Evaluate the pipeline on a directory of fixtures");
  eval->add_option("--fixtures", eval_fixtures, "Directory of fixture directories")->required();
  eval->add_option("--config", eval_config, "Pipeline config JSON");
  eval->add_option("-o,--out", eval_out, "Report JSON path")->required();
  eval->add_option("--jobs", eval_jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*mask) return cmd_mask(mask_input, mask_out, mask_config, mask_trace, mask_recurse);
    if (*synth) return cmd_synth(synth_args);
    if (*eval) return cmd_eval(eval_fixtures, eval_config, eval_out, eval_jobs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::InvalidConfig;
    return usage ? kExitUsage : kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitUsage;
}
