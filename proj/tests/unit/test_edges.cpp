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

#include <gtest/gtest.h>

#include "maskforge/edges.hpp"
#include "maskforge/error.hpp"
#include "support.hpp"

namespace maskforge {
namespace {

using testing::Rng;

TEST(Sobel, ConstantIsZero) {
  const GrayImage s = sobel_magnitude(GrayImage(8, 6, 123));
  for (auto p : s.pixels()) EXPECT_EQ(p, 0);
}

TEST(Sobel, VerticalStepSaturates) {
  GrayImage img(8, 5, 0);
  for (int y = 0; y < 5; ++y)
    for (int x = 4; x < 8; ++x) img(y, x) = 255;
  const GrayImage s = sobel_magnitude(img);
  for (int y = 1; y < 4; ++y) {
    EXPECT_EQ(s(y, 3), 255);
    EXPECT_EQ(s(y, 4), 255);
    EXPECT_EQ(s(y, 2), 0);
    EXPECT_EQ(s(y, 5), 0);
  }
  for (int x = 0; x < 8; ++x) EXPECT_EQ(s(0, x), 0);
}

TEST(Sobel, TooSmall) {
  try {
    sobel_magnitude(GrayImage(2, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ImageTooSmall);
  }
}

TEST(Sobel, MatchesNaiveKernel) {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    const GrayImage img = testing::random_gray(rng, 16, 16);
    EXPECT_EQ(sobel_magnitude(img), testing::naive_sobel(img));
  }
}

TEST(Sobel, PolarityBlind) {
  Rng rng(32);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = testing::random_gray(rng, 12, 9);
    EXPECT_EQ(sobel_magnitude(img), sobel_magnitude(invert(img)));
  }
}

TEST(Threshold, Examples) {
  Rng rng(33);
  const GrayImage img = testing::random_gray(rng, 10, 10);
  EXPECT_EQ(count(threshold(img, 0, Polarity::AboveOrEqual)), 100u);
  std::size_t below = 0;
  for (auto p : img.pixels()) below += p < 255;
  EXPECT_EQ(count(threshold(img, 255, Polarity::Below)), below);
  GrayImage two(2, 1);
  two(0, 0) = 10;
  two(0, 1) = 200;
  const BinaryMask m = threshold(two, 100, Polarity::AboveOrEqual);
  EXPECT_EQ(m(0, 0), 0);
  EXPECT_EQ(m(0, 1), 1);
}

TEST(Threshold, PolaritiesComplement) {
  Rng rng(34);
  const GrayImage img = testing::random_gray(rng, 15, 15);
  for (int t = 0; t < 256; ++t)
    EXPECT_EQ(threshold(img, t, Polarity::AboveOrEqual), complement(threshold(img, t, Polarity::Below)));
}

TEST(Histogram, RoiCountsSelectedPixels) {
  Rng rng(35);
  const GrayImage img = testing::random_gray(rng, 9, 9);
  const BinaryMask roi = testing::random_mask(rng, 9, 9, 0.4);
  const Histogram h = histogram(img, roi);
  std::uint64_t total = 0;
  for (auto c : h) total += c;
  EXPECT_EQ(total, count(roi));
}

TEST(Otsu, ConstantReturnsValue) { EXPECT_EQ(otsu_threshold(GrayImage(5, 5, 77)), 77); }

TEST(Otsu, EmptyHistogram) { EXPECT_FALSE(otsu_threshold(Histogram{}).has_value()); }

TEST(Otsu, TwoLevelMixSeparates) {
  Rng rng(36);
  for (int i = 0; i < 20; ++i) {
    GrayImage img(10, 10, 0);
    for (auto& p : img.pixels()) p = testing::uniform_int(rng, 0, 1) ? 255 : 0;
    img(0, 0) = 0;
    img(0, 1) = 255;
    const int t = otsu_threshold(img);
    EXPECT_GE(t, 1);
    EXPECT_LE(t, 255);
    EXPECT_EQ(t, *testing::naive_otsu(histogram(img)));
  }
}

TEST(Otsu, Bimodal) {
  Histogram h{};
  h[50] = 1000;
  h[200] = 1000;
  const auto t = otsu_threshold(h);
  ASSERT_TRUE(t);
  EXPECT_GT(*t, 50);
  EXPECT_LE(*t, 200);
  EXPECT_EQ(t, testing::naive_otsu(h));
}

TEST(Otsu, MatchesExhaustiveScan) {
  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    Histogram h{};
    const int occupied = testing::uniform_int(rng, 1, 256);
    for (int k = 0; k < occupied; ++k) h[static_cast<std::size_t>(testing::uniform_int(rng, 0, 255))] += testing::uniform_int(rng, 1, 1000);
    EXPECT_EQ(otsu_threshold(h), testing::naive_otsu(h)) << "case " << i;
  }
}

TEST(OtsuTwoLevel, SeparatesThreeClusters) {
  Histogram h{};
  h[10] = 500;
  h[120] = 800;
  h[250] = 2000;
  const auto t = otsu_two_level(h);
  ASSERT_TRUE(t);
  EXPECT_GT(t->first, 10);
  EXPECT_LE(t->first, 120);
  EXPECT_GT(t->second, 120);
  EXPECT_LE(t->second, 250);
}

TEST(OtsuTwoLevel, FewLevelsFallBack) {
  Histogram h{};
  h[40] = 3;
  h[90] = 5;
  const auto t = otsu_two_level(h);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->first, t->second);
  EXPECT_EQ(t->first, *otsu_threshold(h));
}

}  // namespace
}  // namespace maskforge
