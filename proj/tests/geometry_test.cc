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

#include "silrender/geometry.h"

#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"

namespace silrender {
namespace {

TEST(SignedAreaTest, Examples) {
  EXPECT_DOUBLE_EQ(SignedArea({0, 0}, {1, 0}, {0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(SignedArea({0, 0}, {0, 1}, {1, 0}), -0.5);
  EXPECT_EQ(SignedArea({0, 0}, {1, 1}, {2, 2}), 0.0);
}

TEST(SignedAreaTest, AntisymmetricUnderSwaps) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const Vec2 a = testing::RandomPoint(rng, -10, 10, -10, 10);
    const Vec2 b = testing::RandomPoint(rng, -10, 10, -10, 10);
    const Vec2 c = testing::RandomPoint(rng, -10, 10, -10, 10);
    const double s = SignedArea(a, b, c);
    EXPECT_NEAR(SignedArea(b, a, c), -s, 1e-12);
    EXPECT_NEAR(SignedArea(a, c, b), -s, 1e-12);
    EXPECT_NEAR(SignedArea(c, b, a), -s, 1e-12);
  }
}

TEST(FaceBoundingBoxTest, Examples) {
  const Rect r = FaceBoundingBox({-1, -1}, {5, 1}, {2, 7});
  EXPECT_EQ(r.x_min, -1);
  EXPECT_EQ(r.y_min, -1);
  EXPECT_EQ(r.x_max, 5);
  EXPECT_EQ(r.y_max, 7);
  const Rect flat = FaceBoundingBox({0, 0}, {1, 0}, {2, 0});
  EXPECT_EQ(flat.Area(), 0.0);
  EXPECT_TRUE(flat.Empty());
}

TEST(FaceBoundingBoxTest, ContainsVerticesExactly) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    Vec2 p[3];
    for (Vec2& v : p) v = testing::RandomPoint(rng, -100, 100, -100, 100);
    const Rect r = FaceBoundingBox(p[0], p[1], p[2]);
    for (const Vec2& v : p) {
      EXPECT_LE(r.x_min, v.x());
      EXPECT_GE(r.x_max, v.x());
      EXPECT_LE(r.y_min, v.y());
      EXPECT_GE(r.y_max, v.y());
    }
    EXPECT_EQ(r.x_min, std::min({p[0].x(), p[1].x(), p[2].x()}));
    EXPECT_EQ(r.y_max, std::max({p[0].y(), p[1].y(), p[2].y()}));
  }
}

TEST(RectTest, PixelFootprint) {
  const Rect r = Rect::Pixel(3, 7);
  EXPECT_EQ(r.x_min, 7);
  EXPECT_EQ(r.y_min, 3);
  EXPECT_EQ(r.Area(), 1.0);
}

constexpr char kCube[] = R"(# unit cube
v 0 0 0
v 1 0 0
v 1 1 0
v 0 1 0
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 1 3 2
f 1 4 3
f 5 6 7
f 5 7 8
f 1 2 6
f 1 6 5
f 2 3 7
f 2 7 6
f 3 4 8
f 3 8 7
f 4 1 5
f 4 5 8
)";

TEST(ObjTest, ParsesCube) {
  std::istringstream in(kCube);
  const TriangleMesh mesh = ParseObj(in);
  EXPECT_EQ(mesh.vertices.size(), 8u);
  EXPECT_EQ(mesh.faces.size(), 12u);
  EXPECT_EQ(mesh.faces[0], (Face{0, 2, 1}));
}

TEST(ObjTest, FanTriangulatesQuads) {
  std::istringstream in("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  const TriangleMesh mesh = ParseObj(in);
  ASSERT_EQ(mesh.faces.size(), 2u);
  EXPECT_EQ(mesh.faces[0], (Face{0, 1, 2}));
  EXPECT_EQ(mesh.faces[1], (Face{0, 2, 3}));
}

TEST(ObjTest, AcceptsSlashTokensAndNegativeIndices) {
  std::istringstream in(
      "v 0 0 0\nvt 0 0\nvn 0 0 1\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//1 -1\n");
  const TriangleMesh mesh = ParseObj(in);
  ASSERT_EQ(mesh.faces.size(), 1u);
  EXPECT_EQ(mesh.faces[0], (Face{0, 1, 2}));
}

TEST(ObjTest, IndexOutOfRangeReportsLine) {
  std::istringstream in(std::string(kCube) + "f 1 2 99\n");
  try {
    ParseObj(in);
    FAIL() << "expected ObjParseError";
  } catch (const ObjParseError& e) {
    EXPECT_EQ(e.line(), 22);
  }
}

TEST(ObjTest, MalformedNumberReportsLine) {
  std::istringstream in("v 0 0 0\nv 1 x 0\n");
  try {
    ParseObj(in);
    FAIL() << "expected ObjParseError";
  } catch (const ObjParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ObjTest, MissingFileThrows) {
  EXPECT_THROW(LoadObj("/nonexistent/mesh.obj"), std::runtime_error);
}

TEST(ObjTest, SaveThenLoadRoundTrips) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  TriangleMesh mesh;
  for (int i = 0; i < 30; ++i) {
    mesh.vertices.push_back(Vec3(n01(rng), n01(rng), n01(rng)));
  }
  for (int i = 0; i + 2 < 30; ++i) mesh.faces.push_back(Face{i, i + 1, i + 2});
  const auto path =
      std::filesystem::temp_directory_path() / "silrender_roundtrip.obj";
  SaveObj(mesh, path);
  const TriangleMesh back = LoadObj(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.vertices.size(), mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    EXPECT_EQ(back.vertices[i], mesh.vertices[i]);
  }
  EXPECT_EQ(back.faces, mesh.faces);
}

TEST(TriangleMeshTest, ValidateRejectsBadInput) {
  TriangleMesh mesh;
  mesh.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0)};
  mesh.faces = {Face{0, 1, 2}};
  EXPECT_NO_THROW(mesh.Validate());
  TriangleMesh bad_index = mesh;
  bad_index.faces[0][2] = 3;
  EXPECT_THROW(bad_index.Validate(), std::invalid_argument);
  TriangleMesh repeated = mesh;
  repeated.faces[0][2] = 0;
  EXPECT_THROW(repeated.Validate(), std::invalid_argument);
  TriangleMesh nan = mesh;
  nan.vertices[1].x() = std::nan("");
  EXPECT_THROW(nan.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace silrender
