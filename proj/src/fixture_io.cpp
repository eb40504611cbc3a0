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


#include <json.hpp>

#include "maskforge/error.hpp"
#include "maskforge/pnm.hpp"
#include "maskforge/synth.hpp"

namespace maskforge {

using nlohmann::json;

namespace {

json params_to_json(const FixtureParams& p) {
  json offsets = json::array();
  for (const auto& o : p.offsets) offsets.push_back({o.dy, o.dx});
  return {
      {"canvas", {p.canvas_width, p.canvas_height}},
      {"orientations_deg", p.orientations_deg},
      {"rotations_deg", p.rotations_deg},
      {"offsets", offsets},
      {"noise", p.noise.to_string()},
      {"seed", p.seed},
      {"degenerate", p.degenerate},
  };
}

FixtureParams params_from_json(const json& j) {
  FixtureParams p;
  const auto& canvas = j.at("canvas");
  p.canvas_width = canvas.at(0).get<int>();
  p.canvas_height = canvas.at(1).get<int>();
  if (j.contains("orientations_deg")) p.orientations_deg = j.at("orientations_deg").get<std::vector<double>>();
  p.rotations_deg = j.at("rotations_deg").get<std::vector<double>>();
  for (const auto& o : j.at("offsets")) p.offsets.push_back({o.at(0).get<int>(), o.at(1).get<int>()});
  p.noise = NoiseSpec::parse(j.value("noise", std::string("none")));
  p.seed = j.value("seed", std::uint64_t{0});
  p.degenerate = j.value("degenerate", false);
  return p;
}

}  // namespace

void save_fixture(const std::filesystem::path& dir, const OverlapFixture& fixture) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  save_pgm(dir / "image.pgm", fixture.image);
  save_mask(dir / "gt_foreground.pgm", fixture.gt_foreground);
  save_mask(dir / "gt_overlap.pgm", fixture.gt_overlap);
  for (std::size_t i = 0; i < fixture.gt_components.size(); ++i)
    save_mask(dir / ("gt_component_" + std::to_string(i) + ".pgm"), fixture.gt_components[i]);
  write_text_file(dir / "params.json", params_to_json(fixture.params).dump(2) + "\n");
}

OverlapFixture load_fixture(const std::filesystem::path& dir) {
  OverlapFixture fx;
  fx.image = load_pgm(dir / "image.pgm");
  fx.gt_overlap = load_mask(dir / "gt_overlap.pgm");
  if (std::filesystem::exists(dir / "gt_foreground.pgm")) fx.gt_foreground = load_mask(dir / "gt_foreground.pgm");
  for (int i = 0;; ++i) {
    const auto path = dir / ("gt_component_" + std::to_string(i) + ".pgm");
    if (!std::filesystem::exists(path)) break;
    fx.gt_components.push_back(load_mask(path));
  }
  if (fx.gt_foreground.empty()) {
    fx.gt_foreground = fx.gt_overlap;
    for (const auto& c : fx.gt_components) fx.gt_foreground = mask_union(fx.gt_foreground, c);
  }
  const auto params_path = dir / "params.json";
  if (std::filesystem::exists(params_path)) {
    const auto bytes = read_file(params_path);
    try {
      fx.params = params_from_json(json::parse(bytes.begin(), bytes.end()));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Io, params_path.string() + ": " + e.what());
    }
  } else {
    fx.params.canvas_width = fx.image.width();
    fx.params.canvas_height = fx.image.height();
  }
  auto check = [&](const BinaryMask& m, const char* what) {
    if (!m.same_shape(fx.image))
      throw Error(ErrorCode::DimensionMismatch, dir.string() + ": " + what + " does not match image.pgm");
  };
  check(fx.gt_overlap, "gt_overlap");
  check(fx.gt_foreground, "gt_foreground");
  for (const auto& c : fx.gt_components) check(c, "gt_component");
  return fx;
}

}  // namespace maskforge
