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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maskforge/config.hpp"
#include "maskforge/edges.hpp"
#include "maskforge/image.hpp"
#include "maskforge/morphology.hpp"

namespace maskforge {

/// The automatically chosen parameters of one run. Pinning gain and both
/// thresholds as overrides reproduces the run exactly.
struct Provenance {
  double contrast = 0.0;
  double gain = 0.0;
  int overlap_threshold = 0;
  int fg_threshold = 0;
  int angle_deg = 0;
  int line_length = 0;
  int pad = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Pipeline output, in the geometry of the padded input.
struct RegionMaskSet {
  BinaryMask foreground;
  BinaryMask overlap;
  std::vector<BinaryMask> components;  // one per finger, at least two
  Provenance provenance;

  friend bool operator==(const RegionMaskSet&, const RegionMaskSet&) = default;
};

/// Intermediate images keyed by flowchart letter, "b" through "k".
using StageTrace = std::map<std::string, GrayImage>;

struct Preprocessed {
  GrayImage padded_input;
  GrayImage blurred;      // same-size blur of padded_input
  GrayImage intensified;  // inverted, blurred again, scaled; padded geometry
  double contrast = 0.0;
  double gain = 0.0;
};

/// Pads with white, blurs (zero-padded, same size), inverts, blurs again
/// (valid windows only, re-padded with 0 to the padded size) and scales by the
/// gain. Needs at least 64x64 input.
Preprocessed preprocess(const GrayImage& img, const PipelineConfig& cfg);

struct ThresholdedMask {
  BinaryMask mask;
  int threshold = 0;
};

/// (m1 - m0) / m1 for the class means below and at-or-above t; 0 when a class
/// is empty.
double class_contrast(const Histogram& hist, int t);

/// Bright zone of the intensified image: threshold (override, or Otsu),
/// area opening with min_region_area, then the largest component. When roi is
/// given the Otsu histogram is taken over roi shrunk by blur_k (falling back to
/// roi) and the result is clipped to roi; otherwise over all nonzero pixels.
/// An Otsu split whose class_contrast is below min_overlap_contrast means
/// there is no overlap (with no roi, zero pixels count in the dark class).
ThresholdedMask extract_overlap_mask(const GrayImage& intensified, const PipelineConfig& cfg,
                                     const BinaryMask* roi = nullptr);

/// Solid silhouette of the print(s): dark-pixel threshold, area opening with
/// area_open_min, hole filling. The default threshold is the upper level of a
/// three-class Otsu split (ridges / valleys / background).
ThresholdedMask extract_foreground_mask(const GrayImage& padded_input, const PipelineConfig& cfg);

/// Outer outline of a mask: m minus its 3x3 erosion.
BinaryMask boundary_ring(const BinaryMask& m);

struct BridgeResult {
  BinaryMask bridged;  // boundary ring plus the dilated overlap clipped to the foreground
  int angle_deg = 0;
  int line_length = 0;
  int cells = 0;  // interior cells of at least min_region_area cut off by the bridge
};

/// Tries every (length, angle) line dilation of the overlap and keeps the one
/// cutting the silhouette interior into the most finger cells; ties go to the
/// shorter line, then the smaller angle.
BridgeResult bridge_gap(const BinaryMask& overlap, const BinaryMask& foreground,
                        const PipelineConfig& cfg);

/// Traces the regions enclosed by the Sobel outline of the bridged mask and
/// undoes the line dilation on each. Returns at least two masks.
std::vector<BinaryMask> split_regions(const BinaryMask& bridged, const StructuringElement& line,
                                      const PipelineConfig& cfg);

struct RunResult {
  RegionMaskSet masks;
  std::optional<StageTrace> trace;
};

RunResult run(const GrayImage& img, const PipelineConfig& cfg, bool trace = false);

/// White background, red overlap, blue/green/yellow components, cycling with
/// a 40% darkening per lap.
RgbImage reconstruct(const RegionMaskSet& set);

}  // namespace maskforge
