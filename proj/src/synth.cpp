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

#include "maskforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "maskforge/error.hpp"

namespace maskforge {
namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

std::uint8_t clamp_round(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

struct Placed {
  GrayImage image;
  BinaryMask silhouette;
};

Placed place(const GrayImage& print, double rotation_deg, Offset offset, int width, int height) {
  Placed out{GrayImage(width, height, 255), BinaryMask(width, height)};
  const double t = deg2rad(rotation_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double cy = (height - 1) / 2.0 + offset.dy;
  const double cx = (width - 1) / 2.0 + offset.dx;
  const double sy0 = (print.height() - 1) / 2.0;
  const double sx0 = (print.width() - 1) / 2.0;
  for (int y = 0; y < height; ++y) {
    const double dy = y - cy;
    for (int x = 0; x < width; ++x) {
      const double dx = x - cx;
      const long iy = std::lround(c * dy - s * dx + sy0);
      const long ix = std::lround(s * dy + c * dx + sx0);
      if (iy < 0 || ix < 0 || iy >= print.height() || ix >= print.width()) continue;
      const std::uint8_t v = print(static_cast<int>(iy), static_cast<int>(ix));
      out.image(y, x) = v;
      out.silhouette(y, x) = v < kSilhouetteLevel ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

GrayImage synthetic_print(int width, int height, double ridge_period, double orientation_deg,
                          std::uint64_t seed) {
  if (width < 16 || height < 16) throw Error(ErrorCode::ImageTooSmall, "synthetic print below 16x16");
  if (!(ridge_period >= 4.0)) throw Error(ErrorCode::InvalidArgument, "ridge period must be >= 4");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  struct Wave {
    double fx, fy, ph;
  };
  Wave waves[3];
  for (auto& w : waves) {
    w.fx = unit(rng) * 0.02;
    w.fy = unit(rng) * 0.02;
    w.ph = phase(rng);
  }

  constexpr double kRidge = 0.0;
  constexpr double kValley = 180.0;
  const double c0 = std::cos(kPi * 0.3);
  const double cy = (height - 1) / 2.0;
  const double cx = (width - 1) / 2.0;
  const double a = width / 2.0 - 4.0;
  const double b = height / 2.0 - 4.0;
  const double t = deg2rad(orientation_deg);
  const double st = std::sin(t);
  const double ct = std::cos(t);

  GrayImage out(width, height, 255);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double ex = (x - cx) / a;
      const double ey = (y - cy) / b;
      if (ex * ex + ey * ey > 1.0) continue;
      const double u = -(x - cx) * st + (y - cy) * ct;
      double jitter = 0.0;
      for (const auto& w : waves) jitter += 0.8 * std::sin(w.fx * x + w.fy * y + w.ph);
      const double c = std::cos(2 * kPi * u / ridge_period + jitter);
      const double profile = std::clamp((c0 - c) / 0.3 + 0.5, 0.0, 1.0);
      out(y, x) = clamp_round(kRidge + (kValley - kRidge) * profile);
    }
  }
  return out;
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const bool has_param = colon != std::string::npos;
  double value = 0.0;
  if (has_param) {
    const std::string num = text.substr(colon + 1);
    std::size_t used = 0;
    try {
      value = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size() || !std::isfinite(value) || value < 0.0)
      throw Error(ErrorCode::InvalidArgument, "bad noise parameter in '" + text + "'");
  }
  auto need = [&](bool want) {
    if (has_param != want) throw Error(ErrorCode::InvalidArgument, "bad noise spec '" + text + "'");
  };
  if (kind == "none") return need(false), none();
  if (kind == "poisson") return need(false), poisson();
  if (kind == "gaussian") return need(true), gaussian(value);
  if (kind == "speckle") return need(true), speckle(value);
  if (kind == "saltpepper") {
    need(true);
    if (value > 1.0) throw Error(ErrorCode::InvalidArgument, "salt-and-pepper density above 1");
    return salt_pepper(value);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown noise kind '" + kind + "'");
}

std::string NoiseSpec::to_string() const {
  auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  };
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Gaussian: return "gaussian:" + num(param);
    case Kind::SaltPepper: return "saltpepper:" + num(param);
    case Kind::Poisson: return "poisson";
    case Kind::Speckle: return "speckle:" + num(param);
  }
  return "none";
}

GrayImage add_noise(const GrayImage& img, const NoiseSpec& noise, std::uint64_t seed) {
  GrayImage out = img;
  std::mt19937_64 rng(seed);
  auto px = out.pixels();
  switch (noise.kind) {
    case NoiseSpec::Kind::None:
      break;
    case NoiseSpec::Kind::Gaussian: {
      if (noise.param == 0.0) break;
      std::normal_distribution<double> n(0.0, noise.param);
      for (auto& p : px) p = clamp_round(p + n(rng));
      break;
    }
    case NoiseSpec::Kind::SaltPepper: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double d = noise.param;
      for (auto& p : px) {
        const double r = u(rng);
        if (r < d / 2) p = 0;
        else if (r < d) p = 255;
      }
      break;
    }
    case NoiseSpec::Kind::Poisson: {
      for (auto& p : px) {
        if (p == 0) continue;
        std::poisson_distribution<int> n(static_cast<double>(p));
        p = static_cast<std::uint8_t>(std::min(n(rng), 255));
      }
      break;
    }
    case NoiseSpec::Kind::Speckle: {
      if (noise.param == 0.0) break;
      std::normal_distribution<double> n(0.0, std::sqrt(noise.param));
      for (auto& p : px) p = clamp_round(p + p * n(rng));
      break;
    }
  }
  return out;
}

OverlapFixture compose_overlap(std::span<const GrayImage> prints, std::span<const double> rotations_deg,
                               std::span<const Offset> offsets, int canvas_width, int canvas_height) {
  const std::size_t n = prints.size();
  if (n < 2 || n > 3) throw Error(ErrorCode::InvalidArgument, "compose_overlap needs 2 or 3 prints");
  if (rotations_deg.size() != n || offsets.size() != n)
    throw Error(ErrorCode::InvalidArgument, "one rotation and one offset per print");

  std::vector<Placed> placed;
  placed.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    placed.push_back(place(prints[i], rotations_deg[i], offsets[i], canvas_width, canvas_height));

  const std::size_t min_shared = (static_cast<std::size_t>(canvas_width) * canvas_height + 99) / 100;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (count_intersection(placed[i].silhouette, placed[j].silhouette) < min_shared)
        throw Error(ErrorCode::InsufficientOverlap,
                    "prints " + std::to_string(i) + " and " + std::to_string(j) + " share under 1% of the canvas");

  OverlapFixture fx;
  fx.image = placed[0].image;
  for (std::size_t i = 1; i < n; ++i) {
    auto dst = fx.image.pixels();
    auto src = placed[i].image.pixels();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = std::min(dst[k], src[k]);
  }

  BinaryMask cover_once(canvas_width, canvas_height);
  BinaryMask cover_twice(canvas_width, canvas_height);
  for (const auto& p : placed) {
    cover_twice = mask_union(cover_twice, mask_intersection(cover_once, p.silhouette));
    cover_once = mask_union(cover_once, p.silhouette);
  }
  fx.gt_foreground = cover_once;
  fx.gt_overlap = cover_twice;
  for (const auto& p : placed) {
    fx.gt_components.push_back(mask_difference(p.silhouette, cover_twice));
    if (count(fx.gt_components.back()) == 0) fx.params.degenerate = true;
  }

  fx.params.canvas_width = canvas_width;
  fx.params.canvas_height = canvas_height;
  fx.params.rotations_deg.assign(rotations_deg.begin(), rotations_deg.end());
  fx.params.offsets.assign(offsets.begin(), offsets.end());
  return fx;
}

OverlapFixture generate_fixture(std::uint64_t seed, const GenerateOptions& opts) {
  if (opts.prints != 2 && opts.prints != 3)
    throw Error(ErrorCode::InvalidArgument, "fixtures hold 2 or 3 prints");
  if (!(opts.min_overlap_fraction > 0.0 && opts.min_overlap_fraction <= opts.max_overlap_fraction &&
        opts.max_overlap_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "overlap fraction range must lie in (0,1)");
  const bool two = opts.prints == 2;
  const int pw = opts.print_width > 0 ? opts.print_width : (two ? 260 : 240);
  const int ph = opts.print_height > 0 ? opts.print_height : (two ? 360 : 320);
  const int n = opts.prints;

  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  const double base = uniform(0.0, 180.0);
  std::vector<GrayImage> prints;
  std::vector<double> orientations;
  for (int i = 0; i < n; ++i) {
    orientations.push_back(std::fmod(base + 60.0 * i + uniform(-10.0, 10.0) + 360.0, 180.0));
    prints.push_back(synthetic_print(pw, ph, opts.ridge_period, orientations.back(), seed * 10 + i));
  }

  std::vector<double> rotations;
  std::vector<Offset> offsets(n);
  if (two) {
    const double fraction = uniform(opts.min_overlap_fraction, opts.max_overlap_fraction);
    rotations = {uniform(-30.0, 30.0), uniform(-30.0, 30.0)};
    const double dir = uniform(-0.5, 0.5);
    auto layout = [&](int d) {
      const double h = d / 2.0;
      offsets[0] = {static_cast<int>(std::lround(-h * std::sin(dir))), static_cast<int>(std::lround(-h * std::cos(dir)))};
      offsets[1] = {static_cast<int>(std::lround(h * std::sin(dir))), static_cast<int>(std::lround(h * std::cos(dir)))};
    };
    auto shared = [&](int d) {
      layout(d);
      const auto a = place(prints[0], rotations[0], offsets[0], opts.canvas_width, opts.canvas_height);
      const auto b = place(prints[1], rotations[1], offsets[1], opts.canvas_width, opts.canvas_height);
      const double area = static_cast<double>(std::min(count(a.silhouette), count(b.silhouette)));
      return area > 0 ? count_intersection(a.silhouette, b.silhouette) / area : 0.0;
    };
    // shared() shrinks as the distance grows; find the first d at or below the target.
    int lo = 0;
    int hi = std::max(pw, ph);
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (shared(mid) > fraction) lo = mid + 1;
      else hi = mid;
    }
    if (lo > 0 && shared(lo) < opts.min_overlap_fraction) --lo;
    layout(lo);
  } else {
    const double rot0 = uniform(0.0, 120.0);
    const double d = uniform(60.0, 90.0);
    for (int i = 0; i < n; ++i) {
      rotations.push_back(uniform(-20.0, 20.0));
      const double a = deg2rad(rot0 + 120.0 * i);
      offsets[i] = {static_cast<int>(std::lround(d * std::sin(a))), static_cast<int>(std::lround(d * std::cos(a)))};
    }
  }

  OverlapFixture fx = compose_overlap(prints, rotations, offsets, opts.canvas_width, opts.canvas_height);
  fx.params.orientations_deg = orientations;
  fx.params.seed = seed;
  return with_noise(std::move(fx), opts.noise, seed ^ 0x9e3779b97f4a7c15ULL);
}

OverlapFixture with_noise(OverlapFixture fixture, const NoiseSpec& noise, std::uint64_t seed) {
  fixture.image = add_noise(fixture.image, noise, seed);
  fixture.params.noise = noise;
  return fixture;
}

}  // namespace maskforge
