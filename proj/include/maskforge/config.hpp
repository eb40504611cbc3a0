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

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace maskforge {

/// Every tunable of the region-masking pipeline. Field names double as the
/// JSON keys of the config file.
struct PipelineConfig {
  int pad = 32;
  int blur_k = 15;
  std::optional<double> gain_override;
  std::optional<int> overlap_thresh_override;
  std::optional<int> fg_thresh_override;
  int area_open_min = 200;
  int angle_step = 15;
  int line_len_start = 5;
  int line_len_step = 4;
  int line_len_max = 101;
  int min_perimeter = 40;
  int min_region_area = 300;
  /// Smallest (bright - dark) / bright ratio of the two Otsu class means for
  /// the bright zone to count as an overlap. 0 disables the check.
  double min_overlap_contrast = 0.10;

  /// Throws Error(InvalidConfig) describing the first violated constraint.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

nlohmann::json to_json(const PipelineConfig& cfg);
/// Missing keys keep their defaults; unknown keys and out-of-range values are
/// rejected with InvalidConfig.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace maskforge
