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

// Random inputs and brute-force reference implementations shared by the tests.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "maskforge/edges.hpp"
#include "maskforge/image.hpp"
#include "maskforge/morphology.hpp"

namespace maskforge::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline BinaryMask random_mask(Rng& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(w, h);
  for (auto& p : m.pixels()) p = on(rng) ? 1 : 0;
  return m;
}

inline GrayImage random_gray(Rng& rng, int w, int h) {
  GrayImage g(w, h);
  for (auto& p : g.pixels()) p = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
  return g;
}

/// Origin plus up to max_extra random offsets in [-radius, radius]^2.
inline StructuringElement random_se(Rng& rng, int radius, int max_extra) {
  std::vector<Offset> offs{{0, 0}};
  const int extra = uniform_int(rng, 0, max_extra);
  for (int i = 0; i < extra; ++i) offs.push_back({uniform_int(rng, -radius, radius), uniform_int(rng, -radius, radius)});
  return StructuringElement(offs);
}

inline bool inside(const BinaryMask& m, int y, int x) { return y >= 0 && x >= 0 && y < m.height() && x < m.width(); }

inline BinaryMask naive_dilate(const BinaryMask& m, const StructuringElement& se) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      for (const Offset& o : se.offsets()) {
        const int sy = y - o.dy, sx = x - o.dx;
        if (inside(m, sy, sx) && m(sy, sx)) {
          out(y, x) = 1;
          break;
        }
      }
  return out;
}

inline BinaryMask naive_erode(const BinaryMask& m, const StructuringElement& se) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      bool all = true;
      for (const Offset& o : se.offsets()) {
        const int sy = y + o.dy, sx = x + o.dx;
        if (!inside(m, sy, sx) || !m(sy, sx)) {
          all = false;
          break;
        }
      }
      out(y, x) = all ? 1 : 0;
    }
  return out;
}

/// Repeated flood fill; label k (1-based) is the k-th component met in
/// raster order, matching the labeling contract.
inline std::vector<int> naive_labels(const BinaryMask& m, bool eight, int* count = nullptr) {
  const int w = m.width(), h = m.height();
  std::vector<int> lab(static_cast<std::size_t>(w) * h, 0);
  int next = 0;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (!m(y0, x0) || lab[static_cast<std::size_t>(y0) * w + x0]) continue;
      ++next;
      std::vector<std::pair<int, int>> stack{{y0, x0}};
      lab[static_cast<std::size_t>(y0) * w + x0] = next;
      while (!stack.empty()) {
        auto [y, x] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dy == 0 && dx == 0) continue;
            if (!eight && dy != 0 && dx != 0) continue;
            const int ny = y + dy, nx = x + dx;
            if (!inside(m, ny, nx) || !m(ny, nx)) continue;
            auto& l = lab[static_cast<std::size_t>(ny) * w + nx];
            if (l) continue;
            l = next;
            stack.push_back({ny, nx});
          }
      }
    }
  if (count) *count = next;
  return lab;
}

inline BinaryMask naive_area_open(const BinaryMask& m, std::size_t min_area) {
  int n = 0;
  const auto lab = naive_labels(m, true, &n);
  std::vector<std::size_t> area(static_cast<std::size_t>(n) + 1, 0);
  for (int l : lab) ++area[static_cast<std::size_t>(l)];
  BinaryMask out(m.width(), m.height());
  auto px = out.pixels();
  for (std::size_t i = 0; i < lab.size(); ++i) px[i] = (lab[i] && area[static_cast<std::size_t>(lab[i])] >= min_area) ? 1 : 0;
  return out;
}

/// Background pixels reachable from the border through 4-steps stay
/// background; everything else becomes foreground.
inline BinaryMask naive_fill_holes(const BinaryMask& m) {
  const int w = m.width(), h = m.height();
  BinaryMask reach(w, h);
  bool changed = true;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (!m(y, x) && (y == 0 || x == 0 || y == h - 1 || x == w - 1)) reach(y, x) = 1;
  while (changed) {
    changed = false;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (m(y, x) || reach(y, x)) continue;
        const bool near = (y > 0 && reach(y - 1, x)) || (x > 0 && reach(y, x - 1)) ||
                          (y < h - 1 && reach(y + 1, x)) || (x < w - 1 && reach(y, x + 1));
        if (near) {
          reach(y, x) = 1;
          changed = true;
        }
      }
  }
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out(y, x) = reach(y, x) ? 0 : 1;
  return out;
}

/// Direct k x k window mean, (2*sum + area) / (2*area) rounding, zero outside.
inline GrayImage naive_box_blur(const GrayImage& img, int k, bool valid_only) {
  const int r = k / 2;
  const int ow = valid_only ? img.width() - k + 1 : img.width();
  const int oh = valid_only ? img.height() - k + 1 : img.height();
  GrayImage out(ow, oh);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      const int cy = valid_only ? y + r : y, cx = valid_only ? x + r : x;
      long sum = 0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          const int sy = cy + dy, sx = cx + dx;
          if (sy >= 0 && sx >= 0 && sy < img.height() && sx < img.width()) sum += img(sy, sx);
        }
      const long area = static_cast<long>(k) * k;
      out(y, x) = static_cast<std::uint8_t>((2 * sum + area) / (2 * area));
    }
  return out;
}

inline GrayImage naive_sobel(const GrayImage& img) {
  static constexpr int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static constexpr int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  GrayImage out(img.width(), img.height());
  for (int y = 1; y + 1 < img.height(); ++y)
    for (int x = 1; x + 1 < img.width(); ++x) {
      int gx = 0, gy = 0;
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
          gx += kx[j][i] * img(y + j - 1, x + i - 1);
          gy += ky[j][i] * img(y + j - 1, x + i - 1);
        }
      out(y, x) = static_cast<std::uint8_t>(std::min(255, std::abs(gx) + std::abs(gy)));
    }
  return out;
}

/// Exhaustive between-class variance scan over t in [0,255], classes
/// {v < t} and {v >= t}; w0*w1*(mu0-mu1)^2 compared exactly as a rational.
/// Ties keep the smaller t; one occupied level returns that level.
inline std::optional<int> naive_otsu(const Histogram& hist) {
  using I = __int128;
  I total = 0;
  int levels = 0, only = 0;
  for (int v = 0; v < 256; ++v) {
    total += hist[static_cast<std::size_t>(v)];
    if (hist[static_cast<std::size_t>(v)]) {
      ++levels;
      only = v;
    }
  }
  if (total == 0) return std::nullopt;
  if (levels == 1) return only;
  std::optional<int> best;
  I best_num = 0, best_den = 1;
  for (int t = 0; t < 256; ++t) {
    I n0 = 0, s0 = 0, n1 = 0, s1 = 0;
    for (int v = 0; v < 256; ++v) {
      const I c = hist[static_cast<std::size_t>(v)];
      if (v < t) {
        n0 += c;
        s0 += c * v;
      } else {
        n1 += c;
        s1 += c * v;
      }
    }
    if (n0 == 0 || n1 == 0) continue;
    // n0*n1*(s0/n0 - s1/n1)^2 == (s0*n1 - s1*n0)^2 / (n0*n1)
    const I d = s0 * n1 - s1 * n0;
    const I num = d * d;
    const I den = n0 * n1;
    if (!best || num * best_den > best_num * den) {
      best = t;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

}  // namespace maskforge::testing
