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

#include "maskforge/image.hpp"

#include <algorithm>
#include <cmath>

namespace maskforge {

namespace {

template <typename Tag>
Raster<Tag> pad_impl(const Raster<Tag>& img, Margins m, std::uint8_t fill) {
  if (m.top < 0 || m.bottom < 0 || m.left < 0 || m.right < 0) {
    throw Error(ErrorCode::InvalidArgument, "pad amounts must be non-negative");
  }
  Raster<Tag> out(img.width() + m.left + m.right, img.height() + m.top + m.bottom, fill);
  for (int y = 0; y < img.height(); ++y) {
    auto src = img.row(y);
    std::copy(src.begin(), src.end(), out.row(y + m.top).begin() + m.left);
  }
  return out;
}

template <typename Tag>
Raster<Tag> crop_impl(const Raster<Tag>& img, int top, int left, int height, int width) {
  if (top < 0 || left < 0 || height < 1 || width < 1 || top + height > img.height() ||
      left + width > img.width()) {
    throw Error(ErrorCode::InvalidArgument, "crop rectangle outside image");
  }
  Raster<Tag> out(width, height);
  for (int y = 0; y < height; ++y) {
    auto src = img.row(y + top).subspan(static_cast<std::size_t>(left),
                                        static_cast<std::size_t>(width));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

void require_same_shape(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::DimensionMismatch, "masks differ in size");
  }
}

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, Op op) {
  require_same_shape(a, b);
  BinaryMask out(a.width(), a.height());
  auto pa = a.pixels();
  auto pb = b.pixels();
  auto po = out.pixels();
  for (std::size_t i = 0; i < po.size(); ++i) po[i] = op(pa[i], pb[i]);
  return out;
}

}  // namespace

GrayImage pad(const GrayImage& img, Margins m, std::uint8_t fill) { return pad_impl(img, m, fill); }

BinaryMask pad(const BinaryMask& mask, Margins m, bool fill) {
  return pad_impl(mask, m, fill ? 1 : 0);
}

GrayImage crop(const GrayImage& img, Margins m) {
  return crop_impl(img, m.top, m.left, img.height() - m.top - m.bottom,
                   img.width() - m.left - m.right);
}

BinaryMask crop(const BinaryMask& mask, Margins m) {
  return crop_impl(mask, m.top, m.left, mask.height() - m.top - m.bottom,
                   mask.width() - m.left - m.right);
}

BinaryMask crop_rect(const BinaryMask& mask, int top, int left, int height, int width) {
  return crop_impl(mask, top, left, height, width);
}

GrayImage invert(const GrayImage& img) {
  GrayImage out = img;
  for (auto& p : out.pixels()) p = static_cast<std::uint8_t>(255 - p);
  return out;
}

GrayImage scale_saturating(const GrayImage& img, double gain) {
  if (!(gain >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gain must be >= 0");
  // Every input level maps to the same output, so build the table once.
  std::uint8_t lut[256];
  for (int v = 0; v < 256; ++v) {
    const double scaled = std::round(static_cast<double>(v) * gain);
    lut[v] = static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
  }
  GrayImage out = img;
  for (auto& p : out.pixels()) p = lut[p];
  return out;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, [](std::uint8_t x, std::uint8_t y) -> std::uint8_t { return x | y; });
}

BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, [](std::uint8_t x, std::uint8_t y) -> std::uint8_t { return x & y; });
}

BinaryMask mask_difference(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b,
                 [](std::uint8_t x, std::uint8_t y) -> std::uint8_t { return x & (y ^ 1); });
}

BinaryMask complement(const BinaryMask& m) {
  BinaryMask out = m;
  for (auto& p : out.pixels()) p ^= 1;
  return out;
}

std::size_t count(const BinaryMask& m) noexcept {
  std::size_t n = 0;
  for (auto p : m.pixels()) n += p;
  return n;
}

std::size_t count_intersection(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  std::size_t n = 0;
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) n += pa[i] & pb[i];
  return n;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  auto pa = a.pixels();
  auto pb = b.pixels();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] && !pb[i]) return false;
  }
  return true;
}

GrayImage to_gray(const BinaryMask& m) {
  GrayImage out(m.width(), m.height());
  auto src = m.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 255 : 0;
  return out;
}

BinaryMask to_mask(const GrayImage& img) {
  BinaryMask out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] != 0;
  return out;
}

}  // namespace maskforge
