/* Copyright 2026 The silrender Authors.

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.*/

#include "silrender/clip.h"

#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace silrender {
namespace {

const Rect kUnit{0.0, 0.0, 1.0, 1.0};

TEST(LiangBarskyClipTest, Examples) {
  const auto through = LiangBarskyClip({Vec2(-1, 0.5), Vec2(2, 0.5)}, kUnit);
  ASSERT_TRUE(through.has_value());
  EXPECT_EQ(through->a, Vec2(0, 0.5));
  EXPECT_EQ(through->b, Vec2(1, 0.5));

  const Segment inside{Vec2(0.2, 0.3), Vec2(0.7, 0.9)};
  const auto same = LiangBarskyClip(inside, kUnit);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->a, inside.a);
  EXPECT_EQ(same->b, inside.b);

  EXPECT_FALSE(LiangBarskyClip({Vec2(2, 2), Vec2(3, 3)}, kUnit).has_value());
}

TEST(LiangBarskyClipTest, PreservesDirection) {
  const auto clip = LiangBarskyClip({Vec2(2, 0.5), Vec2(-1, 0.5)}, kUnit);
  ASSERT_TRUE(clip.has_value());
  EXPECT_EQ(clip->a, Vec2(1, 0.5));
  EXPECT_EQ(clip->b, Vec2(0, 0.5));
}

TEST(LiangBarskyClipTest, PointContactIsEmpty) {
  EXPECT_FALSE(LiangBarskyClip({Vec2(0, 2), Vec2(2, 0)}, kUnit).has_value());
  EXPECT_FALSE(LiangBarskyClip({Vec2(1, 1), Vec2(2, 3)}, kUnit).has_value());
  EXPECT_FALSE(
      LiangBarskyClip({Vec2(0.5, 0.5), Vec2(0.5, 0.5)}, kUnit).has_value());
}

TEST(LiangBarskyClipTest, RandomSegmentsStayInRectOnLineAndIdempotent) {
  std::mt19937_64 rng(17);
  const Rect rect{2.0, -1.0, 5.0, 3.5};
  int clipped = 0;
  for (int i = 0; i < 2000; ++i) {
    const Segment s{testing::RandomPoint(rng, 0, 7, -3, 6),
                    testing::RandomPoint(rng, 0, 7, -3, 6)};
    const auto c = LiangBarskyClip(s, rect);
    if (!c) continue;
    ++clipped;
    const Vec2 d = s.b - s.a;
    for (const Vec2& p : {c->a, c->b}) {
      EXPECT_GE(p.x(), rect.x_min - 1e-12);
      EXPECT_LE(p.x(), rect.x_max + 1e-12);
      EXPECT_GE(p.y(), rect.y_min - 1e-12);
      EXPECT_LE(p.y(), rect.y_max + 1e-12);
      const Vec2 r = p - s.a;
      EXPECT_LT(std::abs(d.x() * r.y() - d.y() * r.x()) / d.norm(), 1e-12);
    }
    EXPECT_GT((c->b - c->a).dot(d), 0.0);
    const auto again = LiangBarskyClip(*c, rect);
    ASSERT_TRUE(again.has_value());
    EXPECT_LT((again->a - c->a).norm(), 1e-12);
    EXPECT_LT((again->b - c->b).norm(), 1e-12);
  }
  EXPECT_GT(clipped, 500);
}

TEST(ClipPolygonTest, TriangleOverlappingUnitSquare) {
  // The whole unit square satisfies x + y <= 2, so the clip is the square.
  const Polygon tri = {Vec2(0, 0), Vec2(2, 0), Vec2(0, 2)};
  const Polygon clipped = ClipPolygonToRect(tri, kUnit);
  EXPECT_NEAR(PolygonArea(clipped), 1.0, 1e-15);

  // Independent check by sampling.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kSamples = 1000000;
  int inside = 0;
  for (int i = 0; i < kSamples; ++i) {
    const double x = u(rng), y = u(rng);
    if (x + y <= 2.0) ++inside;
  }
  EXPECT_NEAR(static_cast<double>(inside) / kSamples, PolygonArea(clipped),
              2e-3);
}

TEST(ClipPolygonTest, CornerCut) {
  const Polygon tri = {Vec2(0.5, -1), Vec2(2, 0.5), Vec2(0.5, 2)};
  // Sampling estimate of the overlap.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kSamples = 1000000;
  int inside = 0;
  for (int i = 0; i < kSamples; ++i) {
    const Vec2 p(u(rng), u(rng));
    const double s0 = SignedArea(tri[0], tri[1], p);
    const double s1 = SignedArea(tri[1], tri[2], p);
    const double s2 = SignedArea(tri[2], tri[0], p);
    if (s0 >= 0 && s1 >= 0 && s2 >= 0) ++inside;
  }
  EXPECT_NEAR(PolygonArea(ClipPolygonToRect(tri, kUnit)),
              static_cast<double>(inside) / kSamples, 2e-3);
}

TEST(ClipPolygonTest, InsideUnchangedOutsideEmpty) {
  const Polygon in = {Vec2(0.1, 0.1), Vec2(0.9, 0.2), Vec2(0.4, 0.8)};
  const Polygon same = ClipPolygonToRect(in, kUnit);
  EXPECT_NEAR(PolygonArea(same), PolygonArea(in), 1e-15);
  EXPECT_EQ(same.size(), 3u);
  const Polygon out = {Vec2(3, 3), Vec2(4, 3), Vec2(3, 4)};
  EXPECT_TRUE(ClipPolygonToRect(out, kUnit).empty());
}

TEST(ClipPolygonTest, RandomTrianglesAreBoundedAndIdempotent) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const Polygon tri = {testing::RandomPoint(rng, -1, 2, -1, 2),
                         testing::RandomPoint(rng, -1, 2, -1, 2),
                         testing::RandomPoint(rng, -1, 2, -1, 2)};
    const Polygon c = ClipPolygonToRect(tri, kUnit);
    const double area = PolygonArea(c);
    EXPECT_LE(area, std::min(PolygonArea(tri), kUnit.Area()) + 1e-12);
    const Polygon cc = ClipPolygonToRect(c, kUnit);
    EXPECT_NEAR(PolygonArea(cc), area, 1e-12);
    ASSERT_EQ(cc.size(), c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      EXPECT_LT((cc[k] - c[k]).norm(), 1e-12);
    }
  }
}

TEST(PolygonAreaTest, Examples) {
  const Polygon square = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  EXPECT_EQ(PolygonArea(square), 1.0);
  const Polygon tri = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  EXPECT_EQ(PolygonArea(tri), 0.5);
  EXPECT_EQ(PolygonArea(Polygon{}), 0.0);
  const Polygon cw = {Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)};
  EXPECT_EQ(PolygonArea(cw), 0.5);
}

}  // namespace
}  // namespace silrender
