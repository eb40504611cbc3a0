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

#include "maskforge/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace maskforge {

namespace {

// Percentile by nearest rank over the 256-bin histogram.
int percentile(const std::array<std::size_t, 256>& hist, std::size_t total, double q) {
  const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(q * static_cast<double>(total))));
  std::size_t seen = 0;
  for (int v = 0; v < 256; ++v) {
    seen += hist[static_cast<std::size_t>(v)];
    if (seen >= rank) return v;
  }
  return 255;
}

}  // namespace

GrayImage box_blur(const GrayImage& img, int k, BlurMode mode) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "kernel side must be >= 3");
  if (k % 2 == 0) throw Error(ErrorCode::EvenKernel, "kernel side " + std::to_string(k));
  const int w = img.width();
  const int h = img.height();
  if (mode == BlurMode::ValidOnly && k > std::min(w, h)) {
    throw Error(ErrorCode::KernelTooLarge, "kernel exceeds image for valid-only blur");
  }

  // integral[(y+1)*(w+1) + (x+1)] = sum of img over [0,y] x [0,x]
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  std::vector<std::uint32_t> integral(stride * (static_cast<std::size_t>(h) + 1), 0);
  for (int y = 0; y < h; ++y) {
    std::uint32_t run = 0;
    auto src = img.row(y);
    const std::uint32_t* above = integral.data() + static_cast<std::size_t>(y) * stride;
    std::uint32_t* cur = integral.data() + static_cast<std::size_t>(y + 1) * stride;
    for (int x = 0; x < w; ++x) {
      run += src[static_cast<std::size_t>(x)];
      cur[x + 1] = above[x + 1] + run;
    }
  }
  auto rect_sum = [&](int y0, int x0, int y1, int x1) {  // inclusive-exclusive, clipped
    y0 = std::clamp(y0, 0, h);
    y1 = std::clamp(y1, 0, h);
    x0 = std::clamp(x0, 0, w);
    x1 = std::clamp(x1, 0, w);
    const auto at = [&](int y, int x) { return integral[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)]; };
    return at(y1, x1) - at(y0, x1) - at(y1, x0) + at(y0, x0);
  };

  const std::uint32_t area = static_cast<std::uint32_t>(k) * static_cast<std::uint32_t>(k);
  const auto mean = [area](std::uint32_t sum) {
    return static_cast<std::uint8_t>((2 * sum + area) / (2 * area));
  };
  const int r = k / 2;
  if (mode == BlurMode::SameZeroPad) {
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) out(y, x) = mean(rect_sum(y - r, x - r, y + r + 1, x + r + 1));
    }
    return out;
  }
  GrayImage out(w - k + 1, h - k + 1);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) out(y, x) = mean(rect_sum(y, x, y + k, x + k));
  }
  return out;
}

double contrast_index(const GrayImage& img) {
  std::array<std::size_t, 256> hist{};
  for (auto p : img.pixels()) ++hist[p];
  const int lo = percentile(hist, img.size(), 0.05);
  const int hi = percentile(hist, img.size(), 0.95);
  return static_cast<double>(hi - lo) / 255.0;
}

double choose_gain(double contrast) {
  const double c = std::clamp(contrast, 0.0, 1.0);
  return std::clamp(kMinGain + (kMaxGain - kMinGain) * (1.0 - c), kMinGain, kMaxGain);
}

}  // namespace maskforge
