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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maskforge/error.hpp"

namespace maskforge {

inline constexpr int kMaxDimension = 1 << 16;

/// Row-major 8-bit raster. The tag keeps gray images and binary masks from
/// being mixed up; both share storage and geometry code.
template <typename Tag>
class Raster {
 public:
  using value_type = std::uint8_t;

  /// A default-constructed raster is 0x0 and only useful as a placeholder.
  Raster() = default;

  Raster(int width, int height, value_type fill = 0)
      : width_(width), height_(height) {
    check_dimensions(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<value_type> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dimensions(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorCode::InvalidArgument, "pixel buffer does not match width x height");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int y, int x) const noexcept {
    return y >= 0 && x >= 0 && y < height_ && x < width_;
  }

  value_type operator()(int y, int x) const noexcept { return data_[index(y, x)]; }
  value_type& operator()(int y, int x) noexcept { return data_[index(y, x)]; }

  std::span<const value_type> row(int y) const noexcept {
    return {data_.data() + index(y, 0), static_cast<std::size_t>(width_)};
  }
  std::span<value_type> row(int y) noexcept {
    return {data_.data() + index(y, 0), static_cast<std::size_t>(width_)};
  }

  std::span<const value_type> pixels() const noexcept { return data_; }
  std::span<value_type> pixels() noexcept { return data_; }

  template <typename OtherTag>
  bool same_shape(const Raster<OtherTag>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static void check_dimensions(int width, int height) {
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
      throw Error(ErrorCode::InvalidArgument, "image dimensions out of range");
    }
  }

  std::size_t index(int y, int x) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<value_type> data_;
};

struct GrayTag {};
struct MaskTag {};

/// Intensities in [0,255]; ridges are dark, background is light.
using GrayImage = Raster<GrayTag>;

/// Pixels hold 0 (background) or 1 (foreground).
using BinaryMask = Raster<MaskTag>;

/// Interleaved 8-bit RGB, used only for the color reconstruction.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

struct Margins {
  int top = 0;
  int bottom = 0;
  int left = 0;
  int right = 0;

  static constexpr Margins uniform(int n) noexcept { return {n, n, n, n}; }
};

GrayImage pad(const GrayImage& img, Margins m, std::uint8_t fill);
BinaryMask pad(const BinaryMask& mask, Margins m, bool fill = false);

/// Removes the given margins; the inverse of pad().
GrayImage crop(const GrayImage& img, Margins m);
BinaryMask crop(const BinaryMask& mask, Margins m);

/// Extracts the rectangle [top, top+height) x [left, left+width).
BinaryMask crop_rect(const BinaryMask& mask, int top, int left, int height, int width);

/// Every pixel p becomes 255 - p.
GrayImage invert(const GrayImage& img);

/// round(p * gain), ties away from zero, clamped to [0,255].
GrayImage scale_saturating(const GrayImage& img, double gain);

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersection(const BinaryMask& a, const BinaryMask& b);
/// Pixels of a that are not in b.
BinaryMask mask_difference(const BinaryMask& a, const BinaryMask& b);
BinaryMask complement(const BinaryMask& m);

std::size_t count(const BinaryMask& m) noexcept;
std::size_t count_intersection(const BinaryMask& a, const BinaryMask& b);
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// false -> 0, true -> 255.
GrayImage to_gray(const BinaryMask& m);
/// Nonzero -> true.
BinaryMask to_mask(const GrayImage& img);

}  // namespace maskforge
