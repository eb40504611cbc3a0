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

#include "maskforge/config.hpp"

#include <set>

#include "maskforge/error.hpp"
#include "maskforge/filters.hpp"
#include "maskforge/pnm.hpp"

namespace maskforge {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if constexpr (std::is_same_v<T, int>) {
    require(v.is_number_integer(), std::string(key) + " must be an integer");
    out = v.get<int>();
  } else {
    require(v.is_number(), std::string(key) + " must be a number");
    out = v.get<T>();
  }
}

template <typename T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read_field(j, key, value);
  out = value;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void PipelineConfig::validate() const {
  require(pad >= 0 && pad <= 1024, "pad must be in [0,1024]");
  require(blur_k >= 3 && blur_k <= 41 && blur_k % 2 == 1, "blur_k must be odd in [3,41]");
  if (gain_override) {
    require(*gain_override >= kMinGain && *gain_override <= kMaxGain,
            "gain_override must be in [1.5,5.5]");
  }
  if (overlap_thresh_override) {
    require(*overlap_thresh_override >= 0 && *overlap_thresh_override <= 255,
            "overlap_thresh_override must be in [0,255]");
  }
  if (fg_thresh_override) {
    require(*fg_thresh_override >= 0 && *fg_thresh_override <= 255,
            "fg_thresh_override must be in [0,255]");
  }
  require(area_open_min >= 0, "area_open_min must be >= 0");
  require(angle_step >= 1 && angle_step <= 180 && 180 % angle_step == 0,
          "angle_step must divide 180");
  require(line_len_start >= 1 && line_len_start % 2 == 1, "line_len_start must be odd and >= 1");
  require(line_len_step >= 2 && line_len_step % 2 == 0, "line_len_step must be even and >= 2");
  require(line_len_max >= line_len_start && line_len_max % 2 == 1,
          "line_len_max must be odd and >= line_len_start");
  require(min_perimeter >= 0, "min_perimeter must be >= 0");
  require(min_region_area >= 1, "min_region_area must be >= 1");
  require(min_overlap_contrast >= 0.0 && min_overlap_contrast < 1.0, "min_overlap_contrast must be in [0,1)");
}

nlohmann::json to_json(const PipelineConfig& cfg) {
  return {
      {"pad", cfg.pad},
      {"blur_k", cfg.blur_k},
      {"gain_override", optional_json(cfg.gain_override)},
      {"overlap_thresh_override", optional_json(cfg.overlap_thresh_override)},
      {"fg_thresh_override", optional_json(cfg.fg_thresh_override)},
      {"area_open_min", cfg.area_open_min},
      {"angle_step", cfg.angle_step},
      {"line_len_start", cfg.line_len_start},
      {"line_len_step", cfg.line_len_step},
      {"line_len_max", cfg.line_len_max},
      {"min_perimeter", cfg.min_perimeter},
      {"min_region_area", cfg.min_region_area},
      {"min_overlap_contrast", cfg.min_overlap_contrast},
  };
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  static const std::set<std::string> known = {
      "pad", "blur_k", "gain_override", "overlap_thresh_override", "fg_thresh_override",
      "area_open_min", "angle_step", "line_len_start", "line_len_step", "line_len_max",
      "min_perimeter", "min_region_area", "min_overlap_contrast"};
  for (const auto& [key, _] : j.items()) {
    require(known.count(key) != 0, "unknown config key '" + key + "'");
  }
  PipelineConfig cfg;
  read_field(j, "pad", cfg.pad);
  read_field(j, "blur_k", cfg.blur_k);
  read_optional(j, "gain_override", cfg.gain_override);
  read_optional(j, "overlap_thresh_override", cfg.overlap_thresh_override);
  read_optional(j, "fg_thresh_override", cfg.fg_thresh_override);
  read_field(j, "area_open_min", cfg.area_open_min);
  read_field(j, "angle_step", cfg.angle_step);
  read_field(j, "line_len_start", cfg.line_len_start);
  read_field(j, "line_len_step", cfg.line_len_step);
  read_field(j, "line_len_max", cfg.line_len_max);
  read_field(j, "min_perimeter", cfg.min_perimeter);
  read_field(j, "min_region_area", cfg.min_region_area);
  read_field(j, "min_overlap_contrast", cfg.min_overlap_contrast);
  cfg.validate();
  return cfg;
}

PipelineConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  return config_from_json(j);
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_config(std::string(bytes.begin(), bytes.end()));
}

}  // namespace maskforge
