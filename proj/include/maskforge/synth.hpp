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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maskforge/image.hpp"
#include "maskforge/morphology.hpp"

namespace maskforge {

/// Pixels at or above this level are background, below it print.
inline constexpr int kSilhouetteLevel = 250;

/// Oriented ridge grating inside an ellipse inscribed in width x height
/// (4 px margin), white outside. Ridges are dark (0), valleys light (180) and
/// take 30% of each period; a few seeded low-frequency terms bend the
/// ridges slightly.
GrayImage synthetic_print(int width, int height, double ridge_period, double orientation_deg,
                          std::uint64_t seed);

struct NoiseSpec {
  enum class Kind { None, Gaussian, SaltPepper, Poisson, Speckle };
  Kind kind = Kind::None;
  double param = 0.0;  // sigma, density or variance; unused for None/Poisson

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian(double sigma) { return {Kind::Gaussian, sigma}; }
  static NoiseSpec salt_pepper(double density) { return {Kind::SaltPepper, density}; }
  static NoiseSpec poisson() { return {Kind::Poisson, 0.0}; }
  static NoiseSpec speckle(double variance) { return {Kind::Speckle, variance}; }

  /// "none", "gaussian:10", "saltpepper:0.05", "poisson", "speckle:0.04".
  static NoiseSpec parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Gaussian: p + N(0,sigma). SaltPepper: each pixel becomes 0 or 255 with
/// probability density/2 each. Poisson: p ~ Poisson(p). Speckle: p + p*N(0,
/// sqrt(variance)). Results are rounded and clamped; deterministic per seed.
GrayImage add_noise(const GrayImage& img, const NoiseSpec& noise, std::uint64_t seed);

struct FixtureParams {
  int canvas_width = 0;
  int canvas_height = 0;
  std::vector<double> orientations_deg;  // ridge orientation of each synthetic print
  std::vector<double> rotations_deg;
  std::vector<Offset> offsets;  // print center relative to the canvas center
  NoiseSpec noise;
  std::uint64_t seed = 0;
  bool degenerate = false;  // some ground-truth component is empty

  friend bool operator==(const FixtureParams&, const FixtureParams&) = default;
};

struct OverlapFixture {
  GrayImage image;
  BinaryMask gt_foreground;
  BinaryMask gt_overlap;  // covered by two or more silhouettes
  std::vector<BinaryMask> gt_components;  // silhouette_i minus all others
  FixtureParams params;
};

/// Rotates each print about its center (nearest neighbor), moves its center
/// to canvas center + offset, and fuses by pixelwise minimum. Needs 2 or 3
/// prints whose silhouettes pairwise share at least 1% of the canvas.
OverlapFixture compose_overlap(std::span<const GrayImage> prints, std::span<const double> rotations_deg,
                               std::span<const Offset> offsets, int canvas_width, int canvas_height);

struct GenerateOptions {
  int prints = 2;
  int canvas_width = 640;
  int canvas_height = 480;
  int print_width = 0;   // 0 picks 260 for two prints, 240 for three
  int print_height = 0;  // 0 picks 360 for two prints, 320 for three
  double ridge_period = 9.0;
  double min_overlap_fraction = 0.2;  // share of each silhouette that is overlapped
  double max_overlap_fraction = 0.5;
  NoiseSpec noise;
};

/// Seeded synthetic fixture. Two prints are laid side by side at a distance
/// giving an overlap fraction drawn from the configured range; three prints
/// sit on a small triangle so that all of them share a common zone.
OverlapFixture generate_fixture(std::uint64_t seed, const GenerateOptions& opts = {});

/// Applies noise to the fixture image; ground truth is unchanged.
OverlapFixture with_noise(OverlapFixture fixture, const NoiseSpec& noise, std::uint64_t seed);

/// image.pgm, gt_foreground.pgm, gt_overlap.pgm, gt_component_<i>.pgm, params.json
void save_fixture(const std::filesystem::path& dir, const OverlapFixture& fixture);
OverlapFixture load_fixture(const std::filesystem::path& dir);

}  // namespace maskforge
