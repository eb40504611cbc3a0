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

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "maskforge/image.hpp"

namespace maskforge {

using Histogram = std::array<std::uint64_t, 256>;

/// |Gx| + |Gy| of the 3x3 Sobel kernels, clamped to 255. The one-pixel
/// border is set to 0.
GrayImage sobel_magnitude(const GrayImage& img);

enum class Polarity {
  AboveOrEqual,  ///< mask(p) = img(p) >= t
  Below,         ///< mask(p) = img(p) <  t
};

BinaryMask threshold(const GrayImage& img, int t, Polarity keep);

Histogram histogram(const GrayImage& img);
/// Histogram of the pixels selected by roi.
Histogram histogram(const GrayImage& img, const BinaryMask& roi);

/// Threshold t maximizing the between-class variance of {v < t} and {v >= t}.
/// Ties go to the smaller t. A histogram with a single occupied level returns
/// that level; an empty histogram returns nullopt.
std::optional<int> otsu_threshold(const Histogram& hist);
int otsu_threshold(const GrayImage& img);

/// Three-class Otsu: thresholds (t1, t2), t1 < t2, splitting the levels into
/// [0,t1), [t1,t2) and [t2,255]. Falls back to the two-class threshold
/// (returned twice) when fewer than three levels are occupied.
std::optional<std::pair<int, int>> otsu_two_level(const Histogram& hist);

}  // namespace maskforge
