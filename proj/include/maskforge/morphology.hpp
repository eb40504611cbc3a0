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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maskforge/image.hpp"

namespace maskforge {

struct Offset {
  int dy = 0;
  int dx = 0;

  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// A nonempty set of (dy,dx) offsets that always contains the origin.
class StructuringElement {
 public:
  /// Sorts and deduplicates; throws InvalidArgument if (0,0) is missing.
  explicit StructuringElement(std::vector<Offset> offsets);

  std::span<const Offset> offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }
  bool contains(Offset o) const noexcept;
  /// Largest |dy| or |dx| over all offsets.
  int radius() const noexcept;

  friend bool operator==(const StructuringElement&, const StructuringElement&) = default;

 private:
  std::vector<Offset> offsets_;
};

StructuringElement reflect(const StructuringElement& se);

/// The 9 offsets of {-1,0,1}^2.
StructuringElement se_square3();

/// Centered rectangle; both sides must be odd.
StructuringElement se_rect(int height, int width);

/// Point i (i in [-r, r]) of a rasterized line at angle_deg. Angles are
/// counter-clockwise with the y axis pointing up, so dy = -round(i*sin/m) and
/// dx = round(i*cos/m) with m = max(|sin|,|cos|). The dominant axis advances
/// exactly one pixel per step, which makes lines of the same angle nested.
Offset line_point(double angle_deg, int i) noexcept;

/// Digital segment of exactly length pixels centered on the origin.
/// length must be odd; angle in [0,180).
StructuringElement se_line(int length, double angle_deg);

/// out(p) = exists o in se with p - o inside and m(p - o).
BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);

/// out(p) = for all o in se, p + o inside and m(p + o). Pixels outside the
/// raster count as background, so masks shrink at the border.
BinaryMask erode(const BinaryMask& m, const StructuringElement& se);

/// acc(p) |= src(p - o); the building block of dilate().
void dilate_accumulate(BinaryMask& acc, const BinaryMask& src, Offset o);

enum class Connectivity { Four = 4, Eight = 8 };

struct BoundingBox {
  int top = 0;
  int left = 0;
  int bottom = 0;  // inclusive
  int right = 0;   // inclusive

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct ComponentStats {
  int label = 0;
  std::size_t area = 0;
  /// Pixels with a background 4-neighbor or lying on the raster border.
  std::size_t perimeter = 0;
  BoundingBox bbox;

  friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

struct Labeling {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;  // 0 = background, 1..N in raster order
  std::vector<ComponentStats> components;

  std::int32_t at(int y, int x) const noexcept {
    return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
};

/// Two-pass union-find labeling. Foreground uses 8-connectivity by default.
Labeling label_components(const BinaryMask& m, Connectivity conn = Connectivity::Eight);

/// Labels whose perimeter is at least min_perimeter, in label order.
std::vector<int> select_components(std::span<const ComponentStats> stats, std::size_t min_perimeter);

BinaryMask component_mask(const Labeling& labeling, int label);

/// Removes 8-connected components with fewer than min_area pixels.
BinaryMask area_open(const BinaryMask& m, std::size_t min_area);

/// Background regions not 4-connected to the raster border become foreground.
BinaryMask fill_holes(const BinaryMask& m);

/// The 8-connected component with the largest area (first in label order on
/// ties); an empty mask if m is empty.
BinaryMask largest_component(const BinaryMask& m);

}  // namespace maskforge
