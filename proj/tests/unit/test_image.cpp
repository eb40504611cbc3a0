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

#include <string>

#include "maskforge/error.hpp"
#include "maskforge/image.hpp"
#include "maskforge/pnm.hpp"
#include "support.hpp"

namespace maskforge {
namespace {

using testing::Rng;

Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::Io;
}

TEST(Raster, RejectsBadDimensions) {
  EXPECT_EQ(code_of([] { GrayImage(0, 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { GrayImage(2, 2, std::vector<std::uint8_t>(3)); }), ErrorCode::InvalidArgument);
}

TEST(Pad, FiveByFiveByTwoIsCentered) {
  Rng rng(1);
  const GrayImage img = testing::random_gray(rng, 5, 5);
  const GrayImage p = pad(img, Margins::uniform(2), 255);
  ASSERT_EQ(p.width(), 9);
  ASSERT_EQ(p.height(), 9);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) {
      const bool orig = y >= 2 && y < 7 && x >= 2 && x < 7;
      EXPECT_EQ(p(y, x), orig ? img(y - 2, x - 2) : 255);
    }
}

TEST(Pad, ZeroIsIdentity) {
  Rng rng(2);
  const GrayImage img = testing::random_gray(rng, 7, 4);
  EXPECT_EQ(pad(img, Margins{}, 9), img);
}

TEST(Pad, SinglePixelTop) {
  const GrayImage img(1, 1, 7);
  const GrayImage p = pad(img, Margins{1, 0, 0, 0}, 0);
  ASSERT_EQ(p.width(), 1);
  ASSERT_EQ(p.height(), 2);
  EXPECT_EQ(p(0, 0), 0);
  EXPECT_EQ(p(1, 0), 7);
}

TEST(Pad, NegativeRejected) {
  EXPECT_EQ(code_of([] { pad(GrayImage(2, 2), Margins{-1, 0, 0, 0}, 0); }), ErrorCode::InvalidArgument);
}

TEST(Pad, CropInvertsPadForAllAmounts) {
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const GrayImage img = testing::random_gray(rng, testing::uniform_int(rng, 1, 12), testing::uniform_int(rng, 1, 12));
    const Margins m{testing::uniform_int(rng, 0, 32), testing::uniform_int(rng, 0, 32), testing::uniform_int(rng, 0, 32),
                    testing::uniform_int(rng, 0, 32)};
    EXPECT_EQ(crop(pad(img, m, static_cast<std::uint8_t>(i)), m), img);
    const BinaryMask mask = testing::random_mask(rng, img.width(), img.height(), 0.5);
    EXPECT_EQ(crop(pad(mask, m, i % 2 == 0), m), mask);
  }
}

TEST(Invert, Examples) {
  EXPECT_EQ(invert(GrayImage(3, 2, 0)), GrayImage(3, 2, 255));
  EXPECT_EQ(invert(GrayImage(1, 1, 100))(0, 0), 155);
  Rng rng(4);
  const GrayImage img = testing::random_gray(rng, 9, 9);
  EXPECT_EQ(invert(invert(img)), img);
}

TEST(ScaleSaturating, Examples) {
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 40), 2.0)(0, 0), 80);
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 100), 3.0)(0, 0), 255);
  Rng rng(5);
  const GrayImage img = testing::random_gray(rng, 10, 10);
  EXPECT_EQ(scale_saturating(img, 1.0), img);
}

TEST(ScaleSaturating, HalfwayRoundsAwayFromZero) {
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 1), 2.5)(0, 0), 3);   // 2.5 -> 3
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 3), 1.5)(0, 0), 5);   // 4.5 -> 5
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 5), 0.5)(0, 0), 3);   // 2.5 -> 3
  EXPECT_EQ(scale_saturating(GrayImage(1, 1, 7), 0.0)(0, 0), 0);
  EXPECT_EQ(code_of([] { scale_saturating(GrayImage(1, 1), -1.0); }), ErrorCode::InvalidArgument);
}

TEST(MaskUnion, Examples) {
  Rng rng(6);
  const BinaryMask a = testing::random_mask(rng, 8, 8, 0.4);
  const BinaryMask empty(8, 8);
  EXPECT_EQ(mask_union(a, empty), a);
  EXPECT_EQ(mask_union(a, a), a);
  BinaryMask p(3, 3), q(3, 3);
  p(0, 0) = 1;
  q(2, 2) = 1;
  EXPECT_EQ(count(mask_union(p, q)), 2u);
  EXPECT_EQ(code_of([] { mask_union(BinaryMask(2, 2), BinaryMask(3, 2)); }), ErrorCode::DimensionMismatch);
}

TEST(MaskUnion, CommutativeAssociativeIdempotent) {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    const auto a = testing::random_mask(rng, 11, 7, 0.3);
    const auto b = testing::random_mask(rng, 11, 7, 0.3);
    const auto c = testing::random_mask(rng, 11, 7, 0.3);
    EXPECT_EQ(mask_union(a, b), mask_union(b, a));
    EXPECT_EQ(mask_union(mask_union(a, b), c), mask_union(a, mask_union(b, c)));
    EXPECT_EQ(mask_union(b, b), b);
  }
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement(BinaryMask(4, 4)), BinaryMask(4, 4, 1));
  BinaryMask m(3, 3);
  m(1, 1) = 1;
  EXPECT_EQ(count(complement(m)), 8u);
  Rng rng(8);
  const auto r = testing::random_mask(rng, 6, 6, 0.5);
  EXPECT_EQ(complement(complement(r)), r);
}

TEST(MaskOps, IntersectionDifferenceSubset) {
  Rng rng(9);
  const auto a = testing::random_mask(rng, 10, 10, 0.5);
  const auto b = testing::random_mask(rng, 10, 10, 0.5);
  const auto i = mask_intersection(a, b);
  const auto d = mask_difference(a, b);
  EXPECT_TRUE(is_subset(i, a));
  EXPECT_TRUE(is_subset(d, a));
  EXPECT_EQ(count(i) + count(d), count(a));
  EXPECT_EQ(count_intersection(a, b), count(i));
}

TEST(MaskGray, ConversionIsLossless) {
  Rng rng(10);
  const auto m = testing::random_mask(rng, 13, 5, 0.5);
  const GrayImage g = to_gray(m);
  for (auto p : g.pixels()) EXPECT_TRUE(p == 0 || p == 255);
  EXPECT_EQ(to_mask(g), m);
}

TEST(Pgm, ParsesBinaryHeader) {
  Bytes b = to_bytes("P5 2 2 255\n");
  for (std::uint8_t v : {1, 2, 250, 4}) b.push_back(v);
  const GrayImage img = read_pgm(b);
  ASSERT_EQ(img.width(), 2);
  ASSERT_EQ(img.height(), 2);
  EXPECT_EQ(img(0, 0), 1);
  EXPECT_EQ(img(0, 1), 2);
  EXPECT_EQ(img(1, 0), 250);
  EXPECT_EQ(img(1, 1), 4);
}

TEST(Pgm, SkipsComments) {
  const GrayImage img = read_pgm(to_bytes("P2\n# made by hand\n3 1 # width height\n# maxval next\n255\n0 128 255\n"));
  ASSERT_EQ(img.width(), 3);
  EXPECT_EQ(img(0, 1), 128);
}

TEST(Pgm, SmallMaxvalKeepsSamples) {
  const GrayImage img = read_pgm(to_bytes("P2 2 1 15 3 15"));
  EXPECT_EQ(img(0, 0), 3);
  EXPECT_EQ(img(0, 1), 15);
}

TEST(Pgm, Errors) {
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("P5 2 2 65535\n\1\2\3\4\5\6\7\10")); }), ErrorCode::UnsupportedMaxval);
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("P6 2 2 255\n")); }), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("P5 2 x 255\n")); }), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("P5 2 2 255\n\1\2\3")); }), ErrorCode::TruncatedData);
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("P2 2 2 255 1 2 3")); }), ErrorCode::TruncatedData);
  EXPECT_EQ(code_of([] { read_pgm(to_bytes("")); }), ErrorCode::MalformedHeader);
}

TEST(Pgm, RoundTripBothFormats) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const GrayImage img = testing::random_gray(rng, testing::uniform_int(rng, 1, 40), testing::uniform_int(rng, 1, 40));
    EXPECT_EQ(read_pgm(write_pgm(img)), img);
    EXPECT_EQ(read_pgm(write_pgm_ascii(img)), img);
  }
}

TEST(Pgm, WriterEmitsP5Maxval255) {
  const Bytes b = write_pgm(GrayImage(3, 2, 9));
  const std::string head(b.begin(), b.begin() + 11);
  EXPECT_EQ(head, "P5\n3 2\n255\n");
  EXPECT_EQ(b.size(), 11u + 6u);
}

TEST(Ppm, HeaderAndPayload) {
  RgbImage img(2, 1);
  img.data = {1, 2, 3, 4, 5, 6};
  const Bytes b = write_ppm(img);
  const std::string head(b.begin(), b.begin() + 11);
  EXPECT_EQ(head, "P6\n2 1\n255\n");
  EXPECT_EQ(Bytes(b.begin() + 11, b.end()), img.data);
}

}  // namespace
}  // namespace maskforge
