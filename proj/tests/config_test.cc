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


#include "silrender/config.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "silrender/scene.h"

namespace silrender {
namespace {

std::string FieldOf(const std::string& json_text) {
  try {
    ParseSceneConfig(json_text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(SceneConfigTest, EmptyDocumentGivesDefaults) {
  const SceneConfig c = ParseSceneConfig("{}");
  EXPECT_EQ(c.model.kind, ModelKind::kHumanoid);
  EXPECT_EQ(c.render.height, 64);
  EXPECT_EQ(c.render.width, 64);
  EXPECT_EQ(c.render.samples_per_axis, 4);
  EXPECT_EQ(c.cameras.count, 4);
  EXPECT_EQ(c.lambda, 0.001);
  EXPECT_EQ(c.adam.alpha, 1.5e-4);
  EXPECT_EQ(c.adam.beta1, 0.9);
  EXPECT_EQ(c.adam.beta2, 0.999);
  EXPECT_EQ(c.adam.eps, 1e-8);
  EXPECT_EQ(c.threads, 1);
}

TEST(SceneConfigTest, ReadsEverySection) {
  const SceneConfig c = ParseSceneConfig(R"({
    "model": {"kind": "arm", "segments": 8, "rings": 3, "smooth_weights": true},
    "cameras": {"kind": "orthographic", "focal": 12.5, "count": 2,
                "radius": 4, "elevation_deg": 10, "look_at": [0, 1, 0],
                "principal_point": [10, 11]},
    "render": {"height": 32, "width": 48, "samples_per_axis": 2,
               "target_samples_per_axis": 8, "p0": 0.1, "p1": 0.9},
    "objective": {"lambda": 0.5},
    "optimizer": {"alpha": 0.01, "beta1": 0.8, "beta2": 0.99, "eps": 1e-6,
                  "iterations": 7},
    "pose": {"joints": ["elbow"], "min_angle_deg": 5, "max_angle_deg": 6,
             "free": "perturbed"},
    "rigid": {"free": ["tx", "scale"]},
    "seed": 42, "threads": 3})");
  EXPECT_EQ(c.model.kind, ModelKind::kArm);
  EXPECT_EQ(c.model.segments, 8);
  EXPECT_TRUE(c.model.smooth_weights);
  EXPECT_EQ(c.cameras.kind, CameraKind::kOrthographic);
  EXPECT_EQ(*c.cameras.focal, 12.5);
  EXPECT_EQ(*c.cameras.principal_point, Vec2(10, 11));
  EXPECT_EQ(c.cameras.look_at, Vec3(0, 1, 0));
  EXPECT_EQ(c.render.width, 48);
  EXPECT_EQ(*c.render.target_samples_per_axis, 8);
  EXPECT_EQ(c.render.p0, 0.1);
  EXPECT_EQ(c.lambda, 0.5);
  EXPECT_EQ(c.adam.eps, 1e-6);
  EXPECT_EQ(c.iterations, 7);
  EXPECT_EQ(c.pose.joints, std::vector<std::string>{"elbow"});
  EXPECT_EQ(c.pose.free, FreeSet::kPerturbed);
  EXPECT_EQ(c.rigid.free, (std::vector<std::string>{"tx", "scale"}));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.threads, 3);
}

TEST(SceneConfigTest, ErrorsNameTheField) {
  EXPECT_EQ(FieldOf(R"({"render": {"heigth": 3}})"), "render.heigth");
  EXPECT_EQ(FieldOf(R"({"render": {"height": 0}})"), "render.height");
  EXPECT_EQ(FieldOf(R"({"render": {"height": "big"}})"), "render.height");
  EXPECT_EQ(FieldOf(R"({"render": {"samples_per_axis": 1.5}})"),
            "render.samples_per_axis");
  EXPECT_EQ(FieldOf(R"({"model": {"kind": "cube"}})"), "model.kind");
  EXPECT_EQ(FieldOf(R"({"model": {"kind": "obj"}})"), "model.obj_path");
  EXPECT_EQ(FieldOf(R"({"cameras": {"look_at": [1, 2]}})"), "cameras.look_at");
  EXPECT_EQ(FieldOf(R"({"optimizer": {"alpha": -1}})"), "optimizer.alpha");
  EXPECT_EQ(FieldOf(R"({"rigid": {"init": [1, 2]}})"), "rigid.init");
  EXPECT_EQ(FieldOf(R"({"colour": 1})"), "colour");
  EXPECT_EQ(FieldOf("[1, 2]"), "<root>");
  EXPECT_THROW(ParseSceneConfig("{not json"), ConfigError);
  EXPECT_THROW(LoadSceneConfig("/nonexistent/scene.json"), ConfigError);
}

TEST(SceneConfigTest, JsonRoundTrip) {
  SceneConfig c;
  c.model.kind = ModelKind::kTriangle;
  c.cameras.focal = 3.0;
  c.cameras.list = {CameraViewpoint{Vec3(0, 0, 5), Vec3::Zero(), Vec3::UnitY()}};
  c.render.target_samples_per_axis = 16;
  c.adam.alpha = 0.05;
  c.pose.init = std::vector<double>(39, 0.1);
  c.seed = 9;
  const SceneConfig back = ParseSceneConfig(SceneConfigToJson(c));
  EXPECT_EQ(SceneConfigToJson(back), SceneConfigToJson(c));
  EXPECT_EQ(back.cameras.list.size(), 1u);
  EXPECT_EQ(*back.render.target_samples_per_axis, 16);
}

TEST(SceneConfigTest, ShippedConfigsLoad) {
  const std::string dir = std::string(SILRENDER_SOURCE_DIR) + "/configs/";
  const SceneConfig rigid = LoadSceneConfig(dir + "rigid_triangle.json");
  EXPECT_EQ(rigid.model.kind, ModelKind::kTriangle);
  EXPECT_EQ(rigid.adam.alpha, 0.05);
  const SceneConfig arm = LoadSceneConfig(dir + "arm.json");
  EXPECT_EQ(*arm.render.target_samples_per_axis, 16);
  const SceneConfig humanoid = LoadSceneConfig(dir + "humanoid.json");
  EXPECT_EQ(humanoid.adam.alpha, 0.003);
  EXPECT_NO_THROW(BuildScene(rigid, FitMode::kRigid));
  EXPECT_NO_THROW(BuildScene(arm, FitMode::kPose));
  EXPECT_NO_THROW(BuildScene(humanoid, FitMode::kPose));
}

TEST(BuildSceneTest, HumanoidPoseScene) {
  SceneConfig c;
  c.seed = 5;
  const Scene s = BuildScene(c, FitMode::kPose);
  ASSERT_TRUE(s.skeleton);
  EXPECT_EQ(s.param_names.size(), 39u);
  EXPECT_EQ(s.truth.size(), 39u);
  EXPECT_EQ(s.init, std::vector<double>(39, 0.0));
  EXPECT_EQ(s.cameras.size(), 4u);
  ASSERT_EQ(s.perturbed_joints.size(), 3u);
  for (int j = 0; j < 12; ++j) {
    const Vec3 theta(s.truth[3 * j], s.truth[3 * j + 1], s.truth[3 * j + 2]);
    const bool perturbed =
        std::count(s.perturbed_joints.begin(), s.perturbed_joints.end(), j) > 0;
    if (!perturbed) {
      EXPECT_EQ(theta.norm(), 0.0);
      continue;
    }
    EXPECT_NE(j, 0);
    const double degrees = theta.norm() * 180.0 / std::numbers::pi;
    EXPECT_GE(degrees, 15.0 - 1e-9);
    EXPECT_LE(degrees, 30.0 + 1e-9);
  }
  // All joint rotations are free, the root translation is not.
  for (int i = 0; i < 36; ++i) EXPECT_TRUE(s.free[i]);
  for (int i = 36; i < 39; ++i) EXPECT_FALSE(s.free[i]);
}

TEST(BuildSceneTest, SeedControlsTheTruth) {
  SceneConfig c;
  const Scene a = BuildScene(c, FitMode::kPose);
  const Scene b = BuildScene(c, FitMode::kPose);
  EXPECT_EQ(a.truth, b.truth);
  c.seed = 1;
  EXPECT_NE(BuildScene(c, FitMode::kPose).truth, a.truth);
}

TEST(BuildSceneTest, NamedJointsAndFreeSets) {
  SceneConfig c;
  c.model.kind = ModelKind::kArm;
  c.pose.joints = {"elbow"};
  c.pose.min_angle_deg = c.pose.max_angle_deg = 30.0;
  c.pose.free = FreeSet::kPerturbed;
  const Scene s = BuildScene(c, FitMode::kPose);
  EXPECT_EQ(s.perturbed_joints, std::vector<int>{1});
  EXPECT_NEAR(Vec3(s.truth[3], s.truth[4], s.truth[5]).norm(),
              std::numbers::pi / 6.0, 1e-12);
  EXPECT_EQ(s.free, (std::vector<bool>{false, false, false, true, true, true,
                                       false, false, false}));
  c.pose.free = FreeSet::kAll;
  EXPECT_EQ(BuildScene(c, FitMode::kPose).free, std::vector<bool>(9, true));
}

TEST(BuildSceneTest, RigidScene) {
  SceneConfig c;
  c.model.kind = ModelKind::kTriangle;
  const Scene s = BuildScene(c, FitMode::kRigid);
  EXPECT_EQ(s.mesh.faces.size(), 1u);
  EXPECT_EQ(s.free, (std::vector<bool>{true, true, false, false, false, false,
                                       false}));
  EXPECT_EQ(s.truth, c.rigid.truth);
  EXPECT_EQ(s.init, c.rigid.init);
}

TEST(BuildSceneTest, ErrorsNameTheField) {
  SceneConfig c;
  c.model.kind = ModelKind::kTriangle;
  try {
    BuildScene(c, FitMode::kPose);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "model.kind");
  }
  c.model.kind = ModelKind::kArm;
  c.pose.joints = {"knee"};
  try {
    BuildScene(c, FitMode::kPose);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "pose.joints");
  }
  c.pose.joints.clear();
  c.pose.perturbed_joints = 2;
  try {
    BuildScene(c, FitMode::kPose);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "pose.perturbed_joints");
  }
  c.model.kind = ModelKind::kObj;
  c.model.obj_path = "/nonexistent.obj";
  try {
    BuildScene(c, FitMode::kRigid);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "model.obj_path");
  }
}

TEST(BuildCamerasTest, DefaultIntrinsics) {
  SceneConfig c;
  c.render.height = 40;
  c.render.width = 60;
  std::vector<Camera> cams = BuildCameras(c);
  ASSERT_EQ(cams.size(), 4u);
  EXPECT_EQ(cams[0].focal, 80.0);
  EXPECT_EQ(cams[0].principal_point, Vec2(30.0, 20.0));
  EXPECT_NEAR(cams[0].Center().norm(), 5.0, 1e-12);
  c.cameras.kind = CameraKind::kOrthographic;
  cams = BuildCameras(c);
  EXPECT_EQ(cams[0].focal, 16.0);
}

TEST(RenderTargetsTest, UsesTargetSamples) {
  SceneConfig c;
  c.model.kind = ModelKind::kArm;
  c.render.height = c.render.width = 32;
  c.render.target_samples_per_axis = 16;
  c.pose.perturbed_joints = 1;
  const Scene s = BuildScene(c, FitMode::kPose);
  const MultiViewTargets t = RenderTargets(s, s.truth);
  ASSERT_EQ(t.size(), 4u);
  bool fine = false;
  for (double v : t[0].image.data) {
    const double hits = v * 256.0;
    EXPECT_EQ(hits, std::round(hits));
    fine = fine || std::fmod(hits, 16.0) != 0.0;
  }
  EXPECT_TRUE(fine);
}

}  // namespace
}  // namespace silrender
