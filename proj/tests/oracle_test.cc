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

#include "silrender/oracle.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace silrender::oracle {
namespace {

TEST(ExactPixelCoverageTest, Examples) {
  const Rect px = Rect::Pixel(0, 0);
  EXPECT_EQ(ExactPixelCoverage({Vec2(-5, -5), Vec2(10, -5), Vec2(-5, 10)}, px,
                               0.1, 0.7),
            0.7);
  EXPECT_EQ(ExactPixelCoverage({Vec2(5, 5), Vec2(6, 5), Vec2(5, 6)}, px, 0.1,
                               0.7),
            0.1);
  EXPECT_DOUBLE_EQ(
      ExactPixelCoverage({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, px, 0, 1), 0.5);
  EXPECT_THROW(
      ExactPixelCoverage({Vec2(0, 0), Vec2(1, 1), Vec2(2, 2)}, px, 0, 1),
      std::invalid_argument);
}

TEST(ExactImageTest, FrameFillingAndEmpty) {
  for (double v :
       ExactImage(Triangle{Vec2(-1, -1), Vec2(50, -1), Vec2(-1, 50)}, 8, 8, 0,
                  1)
           .data) {
    EXPECT_NEAR(v, 1.0, 1e-15);
  }
  for (double v :
       ExactImage(Triangle{Vec2(20, 20), Vec2(22, 20), Vec2(20, 22)}, 8, 8, 0,
                  1)
           .data) {
    EXPECT_EQ(v, 0.0);
  }
}

TEST(ExactImageTest, AgreesWithHighSampleRender) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Triangle t = testing::RandomTriangle(rng, 12, 12, 0.5);
    const SilhouetteImage exact = ExactImage(t, 12, 12, 0, 1);
    const SilhouetteImage dense = Rasterize(testing::SingleTriangleMesh(t), 12,
                                            12, RenderSettings{256, 0, 1});
    for (std::size_t i = 0; i < exact.size(); ++i) {
      EXPECT_LE(std::abs(exact.data[i] - dense.data[i]), 0.004);
    }
  }
}

TEST(ExactImageTest, SumsToTriangleArea) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const Triangle t = testing::RandomTriangle(rng, 20, 20, 0.0);
    double sum = 0.0;
    for (double v : ExactImage(t, 20, 20, 0, 1).data) sum += v;
    EXPECT_NEAR(sum, SignedArea(t[0], t[1], t[2]), 1e-9);
  }
}

TEST(ExactImageTest, IntegerShiftEquivariance) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Triangle t = testing::RandomTriangle(rng, 10, 10, 0.5);
    const Triangle shifted{t[0] + Vec2(3, 2), t[1] + Vec2(3, 2),
                           t[2] + Vec2(3, 2)};
    const SilhouetteImage a = ExactImage(t, 16, 16, 0, 1);
    const SilhouetteImage b = ExactImage(shifted, 16, 16, 0, 1);
    for (int r = 0; r < 10; ++r) {
      for (int c = 0; c < 10; ++c) {
        EXPECT_NEAR(a.at(r, c), b.at(r + 2, c + 3), 1e-12);
      }
    }
  }
}

TEST(FiniteDifferenceTest, Examples) {
  const std::vector<double> g = FiniteDifference(
      [](std::span<const double> x) { return x[0] * x[0]; },
      std::vector<double>{3.0}, 1e-4);
  EXPECT_NEAR(g[0], 6.0, 1e-7);
  for (double v : FiniteDifference([](std::span<const double>) { return 4.0; },
                                   std::vector<double>{1.0, 2.0, 3.0}, 1e-4)) {
    EXPECT_EQ(v, 0.0);
  }
  EXPECT_THROW(FiniteDifference([](std::span<const double>) { return 0.0; },
                                std::vector<double>{1.0}, 0.0),
               std::invalid_argument);
}

TEST(RelativeErrorTest, FloorsTheDenominator) {
  EXPECT_NEAR(RelativeError(1.0, 1.1, 1e-3), 0.1 / 1.1, 1e-15);
  EXPECT_DOUBLE_EQ(RelativeError(0.0, 1e-12, 1e-3), 1e-9);
}

}  // namespace
}  // namespace silrender::oracle
