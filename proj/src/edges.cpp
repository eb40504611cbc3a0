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

#include "maskforge/edges.hpp"

#include <algorithm>
#include <cstdlib>

namespace maskforge {

GrayImage sobel_magnitude(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  if (w < 3 || h < 3) throw Error(ErrorCode::ImageTooSmall, "sobel needs at least 3x3");
  GrayImage out(w, h);
  for (int y = 1; y < h - 1; ++y) {
    auto up = img.row(y - 1);
    auto mid = img.row(y);
    auto dn = img.row(y + 1);
    auto dst = out.row(y);
    for (int x = 1; x < w - 1; ++x) {
      const auto l = static_cast<std::size_t>(x - 1);
      const auto c = static_cast<std::size_t>(x);
      const auto r = static_cast<std::size_t>(x + 1);
      const int gx = (up[r] + 2 * mid[r] + dn[r]) - (up[l] + 2 * mid[l] + dn[l]);
      const int gy = (dn[l] + 2 * dn[c] + dn[r]) - (up[l] + 2 * up[c] + up[r]);
      dst[c] = static_cast<std::uint8_t>(std::min(255, std::abs(gx) + std::abs(gy)));
    }
  }
  return out;
}

BinaryMask threshold(const GrayImage& img, int t, Polarity keep) {
  if (t < 0 || t > 255) throw Error(ErrorCode::InvalidArgument, "threshold outside [0,255]");
  BinaryMask out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  const bool above = keep == Polarity::AboveOrEqual;
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = (src[i] >= t) == above;
  return out;
}

Histogram histogram(const GrayImage& img) {
  Histogram hist{};
  for (auto p : img.pixels()) ++hist[p];
  return hist;
}

Histogram histogram(const GrayImage& img, const BinaryMask& roi) {
  if (!img.same_shape(roi)) throw Error(ErrorCode::DimensionMismatch, "roi differs in size");
  Histogram hist{};
  auto src = img.pixels();
  auto sel = roi.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (sel[i]) ++hist[src[i]];
  }
  return hist;
}

std::optional<int> otsu_threshold(const Histogram& hist) {
  std::int64_t total = 0;
  std::int64_t total_sum = 0;
  int occupied = 0;
  int only_level = 0;
  for (int v = 0; v < 256; ++v) {
    const auto n = static_cast<std::int64_t>(hist[static_cast<std::size_t>(v)]);
    total += n;
    total_sum += n * v;
    if (n) {
      ++occupied;
      only_level = v;
    }
  }
  if (total == 0) return std::nullopt;
  if (occupied == 1) return only_level;

  // Between-class variance scaled by N^2: (N*s0 - n0*S)^2 / (n0*n1). The
  // numerator difference is exact in 64 bits, so identical partitions
  // produce bit-identical scores and ties resolve to the smaller t.
  int best_t = 1;
  double best = -1.0;
  std::int64_t n0 = 0;
  std::int64_t s0 = 0;
  for (int t = 1; t < 256; ++t) {
    n0 += static_cast<std::int64_t>(hist[static_cast<std::size_t>(t - 1)]);
    s0 += static_cast<std::int64_t>(hist[static_cast<std::size_t>(t - 1)]) * (t - 1);
    const std::int64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const double diff = static_cast<double>(total * s0 - n0 * total_sum);
    const double score = diff * diff / (static_cast<double>(n0) * static_cast<double>(n1));
    if (score > best) {
      best = score;
      best_t = t;
    }
  }
  return best_t;
}

int otsu_threshold(const GrayImage& img) { return *otsu_threshold(histogram(img)); }

std::optional<std::pair<int, int>> otsu_two_level(const Histogram& hist) {
  std::array<std::int64_t, 257> count{};  // prefix sums over [0, v)
  std::array<double, 257> sum{};
  int occupied = 0;
  for (int v = 0; v < 256; ++v) {
    const auto n = static_cast<std::int64_t>(hist[static_cast<std::size_t>(v)]);
    occupied += n != 0;
    count[static_cast<std::size_t>(v) + 1] = count[static_cast<std::size_t>(v)] + n;
    sum[static_cast<std::size_t>(v) + 1] = sum[static_cast<std::size_t>(v)] + static_cast<double>(n) * v;
  }
  if (count[256] == 0) return std::nullopt;
  if (occupied < 3) {
    const int t = *otsu_threshold(hist);
    return std::pair{t, t};
  }
  // Maximizing sum_k S_k^2 / n_k is equivalent to maximizing the
  // between-class variance for a fixed total.
  const auto term = [&](int a, int b) {
    const auto n = count[static_cast<std::size_t>(b)] - count[static_cast<std::size_t>(a)];
    const double s = sum[static_cast<std::size_t>(b)] - sum[static_cast<std::size_t>(a)];
    return s * s / static_cast<double>(n);
  };
  double best = -1.0;
  std::pair<int, int> best_t{1, 2};
  for (int t1 = 1; t1 < 255; ++t1) {
    if (count[static_cast<std::size_t>(t1)] == 0) continue;
    for (int t2 = t1 + 1; t2 < 256; ++t2) {
      if (count[static_cast<std::size_t>(t2)] == count[static_cast<std::size_t>(t1)]) continue;
      if (count[256] == count[static_cast<std::size_t>(t2)]) break;
      const double score = term(0, t1) + term(t1, t2) + term(t2, 256);
      if (score > best * (1.0 + 1e-12)) {
        best = score;
        best_t = {t1, t2};
      }
    }
  }
  return best_t;
}

}  // namespace maskforge
