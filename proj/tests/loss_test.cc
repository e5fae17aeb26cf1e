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


#include "silrender/loss.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "silrender/oracle.h"

namespace silrender {
namespace {

using oracle::FiniteDifference;
using oracle::RelativeError;

SilhouetteImage RandomImage(std::mt19937_64& rng, int h, int w) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SilhouetteImage img(h, w, 0.0, 1.0);
  for (double& v : img.data) v = u(rng);
  return img;
}

Camera FrontCamera(int size) {
  Camera c;
  c.kind = CameraKind::kOrthographic;
  c.focal = 8.0;
  c.principal_point = Vec2(size / 2.0, size / 2.0);
  c.translation = Vec3(0, 0, 5);
  c.height = c.width = size;
  return c;
}

// Two triangles of a quad facing the camera.
TriangleMesh Quad() {
  TriangleMesh m;
  m.vertices = {{-1.1, -0.9, 0}, {1.2, -1.0, 0}, {1.05, 1.1, 0},
                {-0.95, 1.0, 0}};
  m.faces = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

TEST(SilhouetteLossTest, EqualImagesGiveZero) {
  std::mt19937_64 rng(1);
  const SilhouetteImage img = RandomImage(rng, 8, 8);
  MultiViewTargets targets = {{FrontCamera(8), img}};
  const SilhouetteLoss loss =
      ComputeSilhouetteLoss(std::vector<SilhouetteImage>{img}, targets);
  EXPECT_EQ(loss.value, 0.0);
  for (double g : loss.grads[0]) EXPECT_EQ(g, 0.0);
}

TEST(SilhouetteLossTest, OnePixelOff) {
  SilhouetteImage target(4, 5, 0.0, 1.0);
  SilhouetteImage render = target;
  render.at(2, 3) = 1.0;
  const MultiViewTargets targets = {{Camera{.height = 4, .width = 5}, target}};
  const SilhouetteLoss loss =
      ComputeSilhouetteLoss(std::vector<SilhouetteImage>{render}, targets);
  EXPECT_EQ(loss.value, 1.0);
  EXPECT_EQ(loss.grads[0][2 * 5 + 3], 2.0);
  render.at(2, 3) = 0.0;
  target.at(2, 3) = 1.0;
  const SilhouetteLoss flipped = ComputeSilhouetteLoss(
      std::vector<SilhouetteImage>{render},
      MultiViewTargets{{Camera{.height = 4, .width = 5}, target}});
  EXPECT_EQ(flipped.grads[0][2 * 5 + 3], -2.0);
}

TEST(SilhouetteLossTest, MatchesNaiveDoubleLoop) {
  std::mt19937_64 rng(2);
  std::vector<SilhouetteImage> renders;
  MultiViewTargets targets;
  for (int v = 0; v < 3; ++v) {
    renders.push_back(RandomImage(rng, 7, 9));
    targets.push_back({Camera{.height = 7, .width = 9}, RandomImage(rng, 7, 9)});
  }
  const SilhouetteLoss loss = ComputeSilhouetteLoss(renders, targets);
  double expected = 0.0;
  for (int v = 0; v < 3; ++v) {
    for (int r = 0; r < 7; ++r) {
      for (int c = 0; c < 9; ++c) {
        const double d = renders[v].at(r, c) - targets[v].image.at(r, c);
        expected += d * d;
        EXPECT_EQ(loss.grads[v][r * 9 + c], 2.0 * d);
      }
    }
  }
  EXPECT_EQ(loss.value, expected);
  EXPECT_GT(loss.value, 0.0);
}

TEST(SilhouetteLossTest, MismatchesThrow) {
  SilhouetteImage a(4, 4, 0.0, 1.0), b(4, 5, 0.0, 1.0);
  const MultiViewTargets targets = {{Camera{.height = 4, .width = 4}, a}};
  EXPECT_THROW(ComputeSilhouetteLoss(std::vector<SilhouetteImage>{b}, targets),
               std::invalid_argument);
  EXPECT_THROW(ComputeSilhouetteLoss(std::vector<SilhouetteImage>{a, a}, targets),
               std::invalid_argument);
}

TEST(ValidateTargetsTest, Rejections) {
  EXPECT_THROW(ValidateTargets({}), std::invalid_argument);
  SilhouetteImage a(4, 4, 0.0, 1.0);
  EXPECT_NO_THROW(ValidateTargets({{Camera{.height = 4, .width = 4}, a}}));
  EXPECT_THROW(ValidateTargets({{Camera{.height = 4, .width = 5}, a}}),
               std::invalid_argument);
  SilhouetteImage b(4, 4, 0.2, 1.0);
  EXPECT_THROW(ValidateTargets({{Camera{.height = 4, .width = 4}, a},
                                {Camera{.height = 4, .width = 4}, b}}),
               std::invalid_argument);
}

// 0.5 * sum |v - anchor|^2.
Regularizer Quadratic(const std::vector<Vec3>& anchor) {
  return [anchor](const TriangleMesh& mesh) {
    RegularizerValue r;
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
      const Vec3 d = mesh.vertices[k] - anchor[k];
      r.value += 0.5 * d.squaredNorm();
      r.grads.push_back(d);
    }
    return r;
  };
}

TEST(EvaluateObjectiveTest, ZeroRegularizerAndZeroLambdaMatchSilhouetteTerm) {
  const TriangleMesh quad = Quad();
  TriangleMesh moved = quad;
  for (Vec3& v : moved.vertices) v += Vec3(0.13, -0.07, 0.0);
  const RenderSettings settings{4, 0.0, 1.0};
  const Camera cam = FrontCamera(32);
  const MultiViewTargets targets = {
      {cam, Rasterize(Project(moved, cam).screen, 32, 32, settings)}};

  const ObjectiveValue plain = EvaluateObjective(quad, targets, {0.001, {}}, settings);
  EXPECT_GT(plain.e_sl, 0.0);
  EXPECT_EQ(plain.e, plain.e_sl);
  EXPECT_EQ(plain.e_reg, 0.0);

  const Objective off{0.0, Quadratic(moved.vertices)};
  const ObjectiveValue zero_lambda = EvaluateObjective(quad, targets, off, settings);
  EXPECT_EQ(zero_lambda.e, plain.e);
  EXPECT_EQ(zero_lambda.grads, plain.grads);
}

TEST(EvaluateObjectiveTest, GradientIsAffineInLambda) {
  const TriangleMesh quad = Quad();
  const RenderSettings settings{4, 0.0, 1.0};
  const Camera cam = FrontCamera(32);
  TriangleMesh moved = quad;
  for (Vec3& v : moved.vertices) v = 1.1 * v;
  const MultiViewTargets targets = {
      {cam, Rasterize(Project(moved, cam).screen, 32, 32, settings)}};
  const Regularizer reg = Quadratic(moved.vertices);
  const ObjectiveValue g0 = EvaluateObjective(quad, targets, {0.0, reg}, settings);
  const ObjectiveValue g1 = EvaluateObjective(quad, targets, {1.0, reg}, settings);
  const ObjectiveValue g3 = EvaluateObjective(quad, targets, {3.0, reg}, settings);
  for (std::size_t k = 0; k < quad.vertices.size(); ++k) {
    const Vec3 slope = g1.grads[k] - g0.grads[k];
    EXPECT_LT((g3.grads[k] - g0.grads[k] - 3.0 * slope).norm(), 1e-12);
  }
  EXPECT_NEAR(g3.e - g0.e, 3.0 * (g1.e - g0.e), 1e-12);
}

// At a pose whose render equals the target the silhouette term and its
// gradient vanish, and a small step flips no samples, so FD of the combined
// objective sees the regularizer alone.
TEST(EvaluateObjectiveTest, CombinedGradientMatchesFdAtSilhouetteMatch) {
  const TriangleMesh quad = Quad();
  const RenderSettings settings{4, 0.0, 1.0};
  const Camera cam = FrontCamera(32);
  const MultiViewTargets targets = {
      {cam, Rasterize(Project(quad, cam).screen, 32, 32, settings)}};
  std::vector<Vec3> anchor = quad.vertices;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  for (Vec3& a : anchor) a += 0.3 * Vec3(n01(rng), n01(rng), n01(rng));
  const Objective objective{0.25, Quadratic(anchor)};

  const ObjectiveValue at = EvaluateObjective(quad, targets, objective, settings);
  ASSERT_EQ(at.e_sl, 0.0);
  std::vector<double> params;
  for (const Vec3& v : quad.vertices) params.insert(params.end(), {v.x(), v.y(), v.z()});
  const std::vector<double> fd = FiniteDifference(
      [&](std::span<const double> x) {
        TriangleMesh m = quad;
        for (std::size_t k = 0; k < m.vertices.size(); ++k) {
          m.vertices[k] = Vec3(x[3 * k], x[3 * k + 1], x[3 * k + 2]);
        }
        return EvaluateObjective(m, targets, objective, settings).e;
      },
      params, 1e-6);
  for (std::size_t k = 0; k < quad.vertices.size(); ++k) {
    for (int c = 0; c < 3; ++c) {
      EXPECT_LE(RelativeError(at.grads[k][c], fd[3 * k + c], 1e-3), 1e-4);
    }
  }
}

TEST(EvaluateObjectiveTest, ViewsAreSummedAndThreadInvariant) {
  const TriangleMesh quad = Quad();
  const RenderSettings settings{4, 0.0, 1.0};
  Camera a = FrontCamera(24);
  Camera b = a;
  b.rotation = Eigen::AngleAxisd(0.4, Vec3::UnitY()).toRotationMatrix();
  TriangleMesh moved = quad;
  for (Vec3& v : moved.vertices) v += Vec3(0.2, 0.1, 0.0);
  const MultiViewTargets both = {
      {a, Rasterize(Project(moved, a).screen, 24, 24, settings)},
      {b, Rasterize(Project(moved, b).screen, 24, 24, settings)}};
  const ObjectiveValue sum = EvaluateObjective(quad, both, {}, settings);
  const ObjectiveValue va = EvaluateObjective(quad, {both[0]}, {}, settings);
  const ObjectiveValue vb = EvaluateObjective(quad, {both[1]}, {}, settings);
  EXPECT_EQ(sum.e_sl, va.e_sl + vb.e_sl);
  for (std::size_t k = 0; k < quad.vertices.size(); ++k) {
    EXPECT_EQ(sum.grads[k], va.grads[k] + vb.grads[k]);
  }
  const ObjectiveValue threaded = EvaluateObjective(quad, both, {}, settings, 4);
  EXPECT_EQ(threaded.e, sum.e);
  EXPECT_EQ(threaded.grads, sum.grads);
}

TEST(EvaluateObjectiveTest, RejectsBadInputs) {
  const TriangleMesh quad = Quad();
  const RenderSettings settings{4, 0.0, 1.0};
  const Camera cam = FrontCamera(8);
  const MultiViewTargets targets = {{cam, SilhouetteImage(8, 8, 0.0, 1.0)}};
  EXPECT_THROW(EvaluateObjective(quad, targets, {-1.0, {}}, settings),
               std::invalid_argument);
  const Objective wrong{1.0, [](const TriangleMesh&) {
                          return RegularizerValue{1.0, {Vec3::Zero()}};
                        }};
  EXPECT_THROW(EvaluateObjective(quad, targets, wrong, settings),
               std::invalid_argument);
}

TEST(PerVertexErrorTest, Examples) {
  const std::vector<Vec3> a = {{0, 0, 0}};
  EXPECT_EQ(PerVertexError(a, a), 0.0);
  EXPECT_EQ(PerVertexError(a, std::vector<Vec3>{{3, 4, 0}}), 5.0);
  EXPECT_EQ(PerVertexError(std::vector<Vec3>{{0, 0, 0}, {0, 0, 0}},
                           std::vector<Vec3>{{1, 0, 0}, {0, 3, 0}}),
            2.0);
  EXPECT_THROW(PerVertexError(a, std::vector<Vec3>{}), std::invalid_argument);
}

TEST(PerVertexErrorTest, InvariantUnderSharedRigidMotion) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> a, b;
    for (int k = 0; k < 30; ++k) {
      a.emplace_back(n01(rng), n01(rng), n01(rng));
      b.push_back(a.back() + 0.1 * Vec3(n01(rng), n01(rng), n01(rng)));
    }
    const Eigen::Matrix3d r =
        Eigen::AngleAxisd(n01(rng), Vec3(n01(rng), n01(rng), n01(rng)).normalized())
            .toRotationMatrix();
    const Vec3 t(n01(rng), n01(rng), n01(rng));
    std::vector<Vec3> ra, rb;
    for (const Vec3& v : a) ra.push_back(r * v + t);
    for (const Vec3& v : b) rb.push_back(r * v + t);
    EXPECT_NEAR(PerVertexError(ra, rb), PerVertexError(a, b), 1e-9);
  }
}

}  // namespace
}  // namespace silrender
