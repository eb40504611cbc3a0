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

#include "maskforge/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace maskforge {

StructuringElement::StructuringElement(std::vector<Offset> offsets) : offsets_(std::move(offsets)) {
  std::sort(offsets_.begin(), offsets_.end());
  offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
  if (!contains({0, 0})) {
    throw Error(ErrorCode::InvalidArgument, "structuring element must contain the origin");
  }
}

bool StructuringElement::contains(Offset o) const noexcept {
  return std::binary_search(offsets_.begin(), offsets_.end(), o);
}

int StructuringElement::radius() const noexcept {
  int r = 0;
  for (const auto& o : offsets_) r = std::max({r, std::abs(o.dy), std::abs(o.dx)});
  return r;
}

StructuringElement reflect(const StructuringElement& se) {
  std::vector<Offset> out;
  out.reserve(se.size());
  for (const auto& o : se.offsets()) out.push_back({-o.dy, -o.dx});
  return StructuringElement(std::move(out));
}

StructuringElement se_square3() { return se_rect(3, 3); }

StructuringElement se_rect(int height, int width) {
  if (height < 1 || width < 1 || height % 2 == 0 || width % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "rectangle sides must be odd and positive");
  }
  std::vector<Offset> out;
  for (int dy = -height / 2; dy <= height / 2; ++dy) {
    for (int dx = -width / 2; dx <= width / 2; ++dx) out.push_back({dy, dx});
  }
  return StructuringElement(std::move(out));
}

Offset line_point(double angle_deg, int i) noexcept {
  const double rad = angle_deg * std::numbers::pi / 180.0;
  double s = std::sin(rad);
  double c = std::cos(rad);
  const double m = std::max(std::abs(s), std::abs(c));
  s /= m;
  c /= m;
  // lround rounds halves away from zero, so point(-i) == -point(i).
  return {static_cast<int>(-std::lround(i * s)), static_cast<int>(std::lround(i * c))};
}

StructuringElement se_line(int length, double angle_deg) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "line length must be >= 1");
  if (length % 2 == 0) throw Error(ErrorCode::EvenLength, "line length " + std::to_string(length));
  if (!(angle_deg >= 0.0 && angle_deg < 180.0)) {
    throw Error(ErrorCode::InvalidArgument, "line angle must be in [0,180)");
  }
  const int r = (length - 1) / 2;
  std::vector<Offset> out;
  out.reserve(static_cast<std::size_t>(length));
  for (int i = -r; i <= r; ++i) out.push_back(line_point(angle_deg, i));
  return StructuringElement(std::move(out));
}

void dilate_accumulate(BinaryMask& acc, const BinaryMask& src, Offset o) {
  if (!acc.same_shape(src)) throw Error(ErrorCode::DimensionMismatch, "dilate target differs in size");
  const int w = src.width();
  const int h = src.height();
  const int y0 = std::max(0, o.dy);
  const int y1 = std::min(h, h + o.dy);
  const int x0 = std::max(0, o.dx);
  const int x1 = std::min(w, w + o.dx);
  if (x0 >= x1) return;
  for (int y = y0; y < y1; ++y) {
    const std::uint8_t* s = src.row(y - o.dy).data() + (x0 - o.dx);
    std::uint8_t* d = acc.row(y).data() + x0;
    for (int n = x1 - x0, i = 0; i < n; ++i) d[i] |= s[i];
  }
}

BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
  BinaryMask out(m.width(), m.height());
  for (const auto& o : se.offsets()) dilate_accumulate(out, m, o);
  return out;
}

BinaryMask erode(const BinaryMask& m, const StructuringElement& se) {
  const int w = m.width();
  const int h = m.height();
  BinaryMask out(w, h, 1);
  for (const auto& o : se.offsets()) {
    for (int y = 0; y < h; ++y) {
      auto d = out.row(y);
      const int sy = y + o.dy;
      if (sy < 0 || sy >= h) {
        std::fill(d.begin(), d.end(), 0);
        continue;
      }
      const int x0 = std::clamp(-o.dx, 0, w);
      const int x1 = std::clamp(w - o.dx, 0, w);
      std::fill(d.begin(), d.begin() + x0, 0);
      std::fill(d.begin() + x1, d.end(), 0);
      const std::uint8_t* s = m.row(sy).data();
      for (int x = x0; x < x1; ++x) d[static_cast<std::size_t>(x)] &= s[x + o.dx];
    }
  }
  return out;
}

namespace {

class DisjointSet {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // The smaller provisional label wins, which keeps roots in raster order.
    if (a < b) parent_[static_cast<std::size_t>(b)] = a;
    else parent_[static_cast<std::size_t>(a)] = b;
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

Labeling label_components(const BinaryMask& m, Connectivity conn) {
  const int w = m.width();
  const int h = m.height();
  Labeling result;
  result.width = w;
  result.height = h;
  result.labels.assign(m.size(), 0);
  auto& lab = result.labels;
  const auto idx = [w](int y, int x) {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
  };

  // Provisional labels start at 1; slot 0 in the set is unused.
  DisjointSet sets;
  sets.make();
  const bool eight = conn == Connectivity::Eight;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!m(y, x)) continue;
      std::int32_t found = 0;
      const auto visit = [&](int ny, int nx) {
        if (ny < 0 || nx < 0 || nx >= w) return;
        const std::int32_t l = lab[idx(ny, nx)];
        if (!l) return;
        if (!found) found = l;
        else sets.unite(found, l);
      };
      visit(y, x - 1);
      visit(y - 1, x);
      if (eight) {
        visit(y - 1, x - 1);
        visit(y - 1, x + 1);
      }
      lab[idx(y, x)] = found ? found : sets.make();
    }
  }

  std::vector<std::int32_t> remap;
  auto& comps = result.components;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto& l = lab[idx(y, x)];
      if (!l) continue;
      const auto root = static_cast<std::size_t>(sets.find(l));
      if (remap.size() <= root) remap.resize(root + 1, 0);
      if (!remap[root]) {
        remap[root] = static_cast<std::int32_t>(comps.size()) + 1;
        comps.push_back({remap[root], 0, 0, {y, x, y, x}});
      }
      l = remap[root];
      auto& c = comps[static_cast<std::size_t>(l) - 1];
      ++c.area;
      c.bbox.top = std::min(c.bbox.top, y);
      c.bbox.bottom = std::max(c.bbox.bottom, y);
      c.bbox.left = std::min(c.bbox.left, x);
      c.bbox.right = std::max(c.bbox.right, x);
      const bool boundary = y == 0 || x == 0 || y == h - 1 || x == w - 1 || !m(y - 1, x) ||
                            !m(y + 1, x) || !m(y, x - 1) || !m(y, x + 1);
      c.perimeter += boundary;
    }
  }
  return result;
}

std::vector<int> select_components(std::span<const ComponentStats> stats, std::size_t min_perimeter) {
  std::vector<int> out;
  for (const auto& c : stats) {
    if (c.perimeter >= min_perimeter) out.push_back(c.label);
  }
  return out;
}

BinaryMask component_mask(const Labeling& labeling, int label) {
  BinaryMask out(labeling.width, labeling.height);
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = labeling.labels[i] == label;
  return out;
}

BinaryMask area_open(const BinaryMask& m, std::size_t min_area) {
  if (min_area == 0) return m;
  const Labeling lab = label_components(m);
  std::vector<std::uint8_t> keep(lab.components.size() + 1, 0);
  for (const auto& c : lab.components) keep[static_cast<std::size_t>(c.label)] = c.area >= min_area;
  BinaryMask out(m.width(), m.height());
  auto px = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = keep[static_cast<std::size_t>(lab.labels[i])];
  return out;
}

BinaryMask fill_holes(const BinaryMask& m) {
  const int w = m.width();
  const int h = m.height();
  // reached(p) = background pixel 4-connected to the border.
  BinaryMask reached(w, h);
  std::vector<std::pair<int, int>> stack;
  const auto seed = [&](int y, int x) {
    if (!m(y, x) && !reached(y, x)) {
      reached(y, x) = 1;
      stack.emplace_back(y, x);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(0, x);
    seed(h - 1, x);
  }
  for (int y = 0; y < h; ++y) {
    seed(y, 0);
    seed(y, w - 1);
  }
  while (!stack.empty()) {
    const auto [y, x] = stack.back();
    stack.pop_back();
    if (y > 0) seed(y - 1, x);
    if (y < h - 1) seed(y + 1, x);
    if (x > 0) seed(y, x - 1);
    if (x < w - 1) seed(y, x + 1);
  }
  return complement(reached);
}

BinaryMask largest_component(const BinaryMask& m) {
  const Labeling lab = label_components(m);
  if (lab.components.empty()) return BinaryMask(m.width(), m.height());
  const auto best = std::max_element(lab.components.begin(), lab.components.end(),
                                     [](const auto& a, const auto& b) { return a.area < b.area; });
  return component_mask(lab, best->label);
}

}  // namespace maskforge
