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

#include "maskforge/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "maskforge/edges.hpp"
#include "maskforge/filters.hpp"

namespace maskforge {

namespace {

// Square erosion as two line erosions; cheaper than the (2r+1)^2 offsets.
BinaryMask erode_square(const BinaryMask& m, int radius) {
  if (radius <= 0) return m;
  const int side = 2 * radius + 1;
  return erode(erode(m, se_line(side, 0.0)), se_line(side, 90.0));
}

BoundingBox mask_bbox(const BinaryMask& m) {
  BoundingBox box{m.height(), m.width(), -1, -1};
  for (int y = 0; y < m.height(); ++y) {
    auto row = m.row(y);
    for (int x = 0; x < m.width(); ++x) {
      if (!row[static_cast<std::size_t>(x)]) continue;
      box.top = std::min(box.top, y);
      box.bottom = std::max(box.bottom, y);
      box.left = std::min(box.left, x);
      box.right = std::max(box.right, x);
    }
  }
  return box;
}

void paste(BinaryMask& dst, const BinaryMask& src, int top, int left) {
  for (int y = 0; y < src.height(); ++y) {
    auto s = src.row(y);
    std::copy(s.begin(), s.end(), dst.row(y + top).begin() + left);
  }
}

int count_cells(const BinaryMask& cells, std::size_t min_area) {
  const Labeling lab = label_components(cells, Connectivity::Four);
  return static_cast<int>(std::count_if(lab.components.begin(), lab.components.end(),
                                        [&](const auto& c) { return c.area >= min_area; }));
}

double iou_of(const BinaryMask& a, const BinaryMask& b) {
  const auto inter = count_intersection(a, b);
  const auto uni = count(a) + count(b) - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

Preprocessed preprocess(const GrayImage& img, const PipelineConfig& cfg) {
  cfg.validate();
  if (img.width() < 64 || img.height() < 64) {
    throw Error(ErrorCode::ImageTooSmall, "pipeline input must be at least 64x64");
  }
  Preprocessed out;
  out.padded_input = pad(img, Margins::uniform(cfg.pad), 255);
  out.blurred = box_blur(out.padded_input, cfg.blur_k, BlurMode::SameZeroPad);
  const GrayImage edge_blur = box_blur(invert(out.blurred), cfg.blur_k, BlurMode::ValidOnly);
  const GrayImage restored = pad(edge_blur, Margins::uniform(cfg.blur_k / 2), 0);
  out.contrast = contrast_index(img);
  out.gain = cfg.gain_override ? *cfg.gain_override : choose_gain(out.contrast);
  out.intensified = scale_saturating(restored, out.gain);
  return out;
}

double class_contrast(const Histogram& hist, int t) {
  double n0 = 0, s0 = 0, n1 = 0, s1 = 0;
  for (int v = 0; v < 256; ++v) {
    const auto c = static_cast<double>(hist[static_cast<std::size_t>(v)]);
    (v < t ? n0 : n1) += c;
    (v < t ? s0 : s1) += c * v;
  }
  if (n0 == 0 || n1 == 0) return 0.0;
  const double m0 = s0 / n0, m1 = s1 / n1;
  return m1 > 0 ? (m1 - m0) / m1 : 0.0;
}

ThresholdedMask extract_overlap_mask(const GrayImage& intensified, const PipelineConfig& cfg,
                                     const BinaryMask* roi) {
  int t = 0;
  if (cfg.overlap_thresh_override) {
    t = *cfg.overlap_thresh_override;
  } else {
    Histogram hist{};
    Histogram domain{};  // pixels the contrast check compares; keeps the zeros when there is no roi
    if (roi) {
      // Skip the rim where the blur mixes in background.
      hist = histogram(intensified, erode_square(*roi, cfg.blur_k));
      if (std::all_of(hist.begin(), hist.end(), [](auto n) { return n == 0; })) {
        hist = histogram(intensified, *roi);
      }
      domain = hist;
    } else {
      hist = histogram(intensified);
      domain = hist;
      hist[0] = 0;
    }
    const auto otsu = otsu_threshold(hist);
    if (!otsu) throw Error(ErrorCode::NoOverlapFound, "intensified image is empty");
    t = std::max(*otsu, 1);
    if (class_contrast(domain, t) < cfg.min_overlap_contrast) {
      throw Error(ErrorCode::NoOverlapFound, "no distinctly brighter zone in the intensified image");
    }
  }
  BinaryMask mask = threshold(intensified, t, Polarity::AboveOrEqual);
  if (roi) mask = mask_intersection(mask, *roi);
  mask = largest_component(area_open(mask, static_cast<std::size_t>(cfg.min_region_area)));
  if (count(mask) == 0) throw Error(ErrorCode::NoOverlapFound, "no bright zone survives filtering");
  return {std::move(mask), t};
}

ThresholdedMask extract_foreground_mask(const GrayImage& padded_input, const PipelineConfig& cfg) {
  int t = 0;
  if (cfg.fg_thresh_override) {
    t = *cfg.fg_thresh_override;
  } else {
    t = otsu_two_level(histogram(padded_input))->second;
  }
  BinaryMask mask = threshold(padded_input, t, Polarity::Below);
  mask = fill_holes(area_open(mask, static_cast<std::size_t>(cfg.area_open_min)));
  if (count(mask) == 0) throw Error(ErrorCode::NoForeground, "no print pixels survive filtering");
  return {std::move(mask), t};
}

BinaryMask boundary_ring(const BinaryMask& m) { return mask_difference(m, erode(m, se_square3())); }

BridgeResult bridge_gap(const BinaryMask& overlap, const BinaryMask& foreground,
                        const PipelineConfig& cfg) {
  cfg.validate();
  const BinaryMask seed = mask_intersection(overlap, foreground);
  if (count(seed) == 0) throw Error(ErrorCode::NoOverlapFound, "overlap lies outside the foreground");

  // Everything that matters lies inside the foreground's bounding box.
  const BoundingBox box = mask_bbox(foreground);
  const int bh = box.bottom - box.top + 1;
  const int bw = box.right - box.left + 1;
  const BinaryMask fg = crop_rect(foreground, box.top, box.left, bh, bw);
  const BinaryMask ov = crop_rect(seed, box.top, box.left, bh, bw);
  const BinaryMask interior = erode(fg, se_square3());
  const auto min_area = static_cast<std::size_t>(cfg.min_region_area);

  std::vector<int> angles;
  for (int a = 0; a < 180; a += cfg.angle_step) angles.push_back(a);

  // Lines of one angle are nested in length, so each length step only adds
  // the new end points to the running dilation.
  std::vector<BinaryMask> grown;
  for (int a : angles) grown.push_back(dilate(ov, se_line(cfg.line_len_start, a)));

  // The whole grid is scanned: the most cells wins, then the shortest line,
  // then the smallest angle. Three prints need a longer line than two.
  BridgeResult result;
  BinaryMask best;
  for (int len = cfg.line_len_start; len <= cfg.line_len_max; len += cfg.line_len_step) {
    const int r = (len - 1) / 2;
    for (std::size_t k = 0; k < angles.size(); ++k) {
      if (len > cfg.line_len_start) {
        for (int i = r - cfg.line_len_step / 2 + 1; i <= r; ++i) {
          dilate_accumulate(grown[k], ov, line_point(angles[k], i));
          dilate_accumulate(grown[k], ov, line_point(angles[k], -i));
        }
      }
      const int cells = count_cells(mask_difference(interior, grown[k]), min_area);
      if (cells >= 2 && cells > result.cells) {
        result.angle_deg = angles[k];
        result.line_length = len;
        result.cells = cells;
        best = grown[k];
      }
    }
  }
  if (result.cells < 2) throw Error(ErrorCode::BridgeFailed, "no line dilation within bounds splits the interior");
  BinaryMask bridged(foreground.width(), foreground.height());
  paste(bridged, mask_intersection(best, fg), box.top, box.left);
  result.bridged = mask_union(bridged, boundary_ring(foreground));
  return result;
}

std::vector<BinaryMask> split_regions(const BinaryMask& bridged, const StructuringElement& line,
                                      const PipelineConfig& cfg) {
  if (count(bridged) == 0) throw Error(ErrorCode::TooFewRegions, "bridged mask is empty");
  // The bridged mask contains the closed outline of the silhouette, so
  // filling it recovers the foreground.
  const BinaryMask interior = erode(fill_holes(bridged), se_square3());
  const BinaryMask outside = complement(interior);
  const BinaryMask edges = threshold(sobel_magnitude(to_gray(bridged)), 1, Polarity::AboveOrEqual);

  // Regions are the areas enclosed by the traced outline.
  const Labeling lab = label_components(complement(edges), Connectivity::Four);
  std::vector<BinaryMask> band_regions;
  std::vector<BinaryMask> cells;
  for (int label : select_components(lab.components, static_cast<std::size_t>(cfg.min_perimeter))) {
    const auto& c = lab.components[static_cast<std::size_t>(label) - 1];
    if (c.bbox.top == 0 || c.bbox.left == 0 || c.bbox.bottom == bridged.height() - 1 ||
        c.bbox.right == bridged.width() - 1) {
      continue;
    }
    BinaryMask region = fill_holes(dilate(component_mask(lab, label), se_square3()));
    if (2 * count_intersection(region, bridged) > count(region)) band_regions.push_back(std::move(region));
    else cells.push_back(std::move(region));
  }

  // Undo the line dilation on the inverted picture: the band shrinks back
  // (pixels outside the interior count as band so only internal interfaces
  // move) and the cells it cut into grow back by the same line.
  const StructuringElement nullifier = reflect(line);
  std::vector<BinaryMask> regions;
  BinaryMask taken(bridged.width(), bridged.height());
  for (const auto& region : band_regions) {
    BinaryMask r = mask_difference(mask_intersection(erode(mask_union(region, outside), nullifier), interior), taken);
    taken = mask_union(taken, r);
    regions.push_back(std::move(r));
  }
  for (const auto& region : cells) {
    BinaryMask r = mask_difference(mask_intersection(dilate(region, line), interior), taken);
    taken = mask_union(taken, r);
    regions.push_back(std::move(r));
  }
  std::erase_if(regions, [&](const BinaryMask& r) { return count(r) < static_cast<std::size_t>(cfg.min_region_area); });
  if (regions.size() < 2) throw Error(ErrorCode::TooFewRegions, "fewer than two regions traced");
  return regions;
}

RunResult run(const GrayImage& img, const PipelineConfig& cfg, bool trace) {
  const Preprocessed pre = preprocess(img, cfg);
  RunResult out;
  if (trace) out.trace.emplace();
  auto record = [&](const char* key, GrayImage image) {
    if (out.trace) out.trace->emplace(key, std::move(image));
  };
  record("b", pre.blurred);
  record("c", pre.intensified);

  const ThresholdedMask fg = extract_foreground_mask(pre.padded_input, cfg);
  const ThresholdedMask ov = extract_overlap_mask(pre.intensified, cfg, &fg.mask);
  const BinaryMask ring = boundary_ring(fg.mask);
  record("d", to_gray(ov.mask));
  record("e", to_gray(ring));
  record("f", to_gray(mask_union(ov.mask, ring)));

  const BridgeResult bridge = bridge_gap(ov.mask, fg.mask, cfg);
  record("g", to_gray(bridge.bridged));
  if (out.trace) {
    record("h", to_gray(threshold(sobel_magnitude(to_gray(bridge.bridged)), 1, Polarity::AboveOrEqual)));
  }

  const auto line = se_line(bridge.line_length, bridge.angle_deg);
  std::vector<BinaryMask> regions = split_regions(bridge.bridged, line, cfg);

  // The region that best matches the pre-bridge bright zone is the overlap.
  std::size_t overlap_idx = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const double score = iou_of(regions[i], ov.mask);
    if (score > best) {
      best = score;
      overlap_idx = i;
    }
  }

  RegionMaskSet& set = out.masks;
  set.foreground = fg.mask;
  set.overlap = mask_intersection(regions[overlap_idx], fg.mask);
  BinaryMask claimed = set.overlap;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i == overlap_idx) continue;
    BinaryMask c = mask_difference(mask_intersection(regions[i], fg.mask), claimed);
    if (count(c) < static_cast<std::size_t>(cfg.min_region_area)) continue;
    claimed = mask_union(claimed, c);
    set.components.push_back(std::move(c));
  }
  if (set.components.size() < 2) {
    throw Error(ErrorCode::TooFewRegions, "fewer than two finger regions");
  }
  set.provenance = {pre.contrast, pre.gain, ov.threshold, fg.threshold,
                    bridge.angle_deg, bridge.line_length, cfg.pad};

  if (out.trace) {
    record("i", to_gray(set.components[0]));
    record("j", to_gray(set.overlap));
    record("k", to_gray(set.components[1]));
  }
  return out;
}

RgbImage reconstruct(const RegionMaskSet& set) {
  const int w = set.foreground.width();
  const int h = set.foreground.height();
  RgbImage out(w, h);
  std::fill(out.data.begin(), out.data.end(), 255);
  const auto paint = [&](const BinaryMask& m, std::array<int, 3> rgb) {
    auto px = m.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
      if (!px[i]) continue;
      for (std::size_t ch = 0; ch < 3; ++ch) out.data[i * 3 + ch] = static_cast<std::uint8_t>(rgb[ch]);
    }
  };
  static constexpr std::array<std::array<int, 3>, 3> palette = {{
      {60, 90, 200},
      {60, 170, 90},
      {210, 190, 60},
  }};
  for (std::size_t i = 0; i < set.components.size(); ++i) {
    auto rgb = palette[i % palette.size()];
    for (std::size_t lap = 0; lap < i / palette.size(); ++lap) {
      for (auto& v : rgb) v = static_cast<int>(std::lround(v * 0.6));
    }
    paint(set.components[i], rgb);
  }
  paint(set.overlap, {220, 50, 50});
  return out;
}

}  // namespace maskforge
