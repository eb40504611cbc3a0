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

#include "maskforge/image.hpp"

namespace maskforge {

enum class BlurMode {
  SameZeroPad,  ///< output keeps input size; pixels outside the image count as 0
  ValidOnly,    ///< only windows fully inside the image; (h-k+1) x (w-k+1)
};

/// Rounded mean of every k x k window. Runs over an integral image, so the
/// cost does not depend on k.
GrayImage box_blur(const GrayImage& img, int k, BlurMode mode);

/// (p95 - p5) / 255 using nearest-rank percentiles; 0 for constant images.
double contrast_index(const GrayImage& img);

inline constexpr double kMinGain = 1.5;
inline constexpr double kMaxGain = 5.5;

/// Maps contrast in [0,1] to a gain in [1.5, 5.5]; faint prints get the larger gain.
double choose_gain(double contrast);

}  // namespace maskforge
