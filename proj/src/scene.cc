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

#include "silrender/scene.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace silrender {
namespace {

TriangleMesh ToyTriangle() {
  TriangleMesh m;
  m.vertices = {Vec3(-10.0, -8.0, 0.0), Vec3(12.0, -6.0, 0.0),
                Vec3(-2.0, 11.0, 0.0)};
  m.faces = {Face{0, 1, 2}};
  return m;
}

ToyBodySpec BodySpec(const ModelConfig& model) {
  ToyBodySpec spec = model.kind == ModelKind::kArm ? ToyBodySpec::Arm()
                                                   : ToyBodySpec::Humanoid();
  spec.segments = model.segments;
  spec.rings = model.rings;
  spec.smooth_weights = model.smooth_weights;
  return spec;
}

// Unit vector orthogonal to `axis`, uniformly distributed on that circle.
Vec3 RandomSwingAxis(std::mt19937_64& rng, const Vec3& axis) {
  std::normal_distribution<double> n01;
  for (;;) {
    Vec3 v(n01(rng), n01(rng), n01(rng));
    v -= v.dot(axis) * axis;
    if (v.norm() > 1e-3) return v.normalized();
  }
}

}  // namespace

std::vector<Camera> BuildCameras(const SceneConfig& config) {
  const CameraConfig& cc = config.cameras;
  Camera intr;
  intr.kind = cc.kind;
  intr.height = config.render.height;
  intr.width = config.render.width;
  const double side = std::min(config.render.height, config.render.width);
  intr.focal = cc.focal.value_or(cc.kind == CameraKind::kPerspective
                                     ? 2.0 * side
                                     : 0.4 * side);
  intr.principal_point = cc.principal_point.value_or(
      Vec2(0.5 * config.render.width, 0.5 * config.render.height));
  std::vector<Camera> cams;
  if (!cc.list.empty()) {
    for (const CameraViewpoint& v : cc.list) {
      if ((v.eye - v.target).norm() == 0.0) {
        throw ConfigError("cameras.list", "eye and target coincide");
      }
      cams.push_back(LookAt(v.eye, v.target, v.up, intr));
    }
  } else {
    cams = MakeTurntableCameras(cc.count, cc.radius, cc.elevation_deg,
                                cc.look_at, intr);
  }
  for (const Camera& c : cams) c.Validate();
  return cams;
}

Scene BuildScene(const SceneConfig& config, FitMode mode) {
  ValidateSceneConfig(config);
  Scene s;
  s.config = config;
  s.mode = mode;
  switch (config.model.kind) {
    case ModelKind::kTriangle:
      s.mesh = ToyTriangle();
      break;
    case ModelKind::kObj:
      try {
        s.mesh = LoadObj(config.model.obj_path);
      } catch (const ObjParseError& e) {
        throw ConfigError("model.obj_path", e.what());
      } catch (const std::runtime_error& e) {
        throw ConfigError("model.obj_path", e.what());
      }
      break;
    case ModelKind::kArm:
    case ModelKind::kHumanoid: {
      s.body = BodySpec(config.model);
      ToyBody body = MakeToyBody(*s.body);
      s.mesh = std::move(body.mesh);
      s.skeleton = std::move(body.skeleton);
      break;
    }
  }
  s.cameras = BuildCameras(config);

  if (mode == FitMode::kRigid) {
    s.param_names = {"tx", "ty", "tz", "rx", "ry", "rz", "scale"};
    s.truth = config.rigid.truth;
    s.init = config.rigid.init;
    s.free.assign(RigidParams::kSize, false);
    for (const std::string& name : config.rigid.free) {
      const auto it = std::find(s.param_names.begin(), s.param_names.end(), name);
      s.free[it - s.param_names.begin()] = true;
    }
    return s;
  }

  if (!s.skeleton) {
    throw ConfigError("model.kind", "pose fitting needs an arm or humanoid model");
  }
  const Skeleton& sk = *s.skeleton;
  const int num_joints = sk.NumJoints();
  for (int j = 0; j < num_joints; ++j) {
    for (const char* axis : {"x", "y", "z"}) {
      s.param_names.push_back(sk.names[j] + "." + axis);
    }
  }
  for (const char* axis : {"tx", "ty", "tz"}) s.param_names.push_back(axis);

  std::mt19937_64 rng(config.seed);
  std::vector<int> joints;
  if (!config.pose.joints.empty()) {
    for (const std::string& name : config.pose.joints) {
      const int j = sk.JointIndex(name);
      if (j < 0) throw ConfigError("pose.joints", "unknown joint '" + name + "'");
      if (std::find(joints.begin(), joints.end(), j) == joints.end()) {
        joints.push_back(j);
      }
    }
  } else {
    std::vector<int> candidates;
    for (int j = 1; j < num_joints; ++j) candidates.push_back(j);
    if (config.pose.perturbed_joints > static_cast<int>(candidates.size())) {
      throw ConfigError("pose.perturbed_joints",
                        "model has only " + std::to_string(candidates.size()) +
                            " non-root joints");
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    joints.assign(candidates.begin(),
                  candidates.begin() + config.pose.perturbed_joints);
    std::sort(joints.begin(), joints.end());
  }
  s.perturbed_joints = joints;

  PoseParams truth = PoseParams::Zero(num_joints);
  std::uniform_real_distribution<double> angle(config.pose.min_angle_deg,
                                               config.pose.max_angle_deg);
  for (int j : joints) {
    const LimbSpec& limb = s.body->limbs[j];
    const Vec3 axis = (limb.end - limb.start).normalized();
    const double radians = angle(rng) * std::numbers::pi / 180.0;
    truth.theta[j] = radians * RandomSwingAxis(rng, axis);
  }
  s.truth = truth.ToVector();

  const int num_params = PoseParams::Size(num_joints);
  if (config.pose.init.empty()) {
    s.init.assign(num_params, 0.0);
  } else if (static_cast<int>(config.pose.init.size()) == num_params) {
    s.init = config.pose.init;
  } else {
    throw ConfigError("pose.init", "expected " + std::to_string(num_params) +
                                       " numbers");
  }
  s.free.assign(num_params, false);
  for (int j = 0; j < num_joints; ++j) {
    const bool free =
        config.pose.free != FreeSet::kPerturbed ||
        std::find(joints.begin(), joints.end(), j) != joints.end();
    for (int i = 0; i < 3; ++i) s.free[3 * j + i] = free;
  }
  for (int i = 0; i < 3; ++i) {
    s.free[3 * num_joints + i] = config.pose.free == FreeSet::kAll;
  }
  return s;
}

PosedMesh Scene::Evaluate(std::span<const double> params) const {
  if (mode == FitMode::kRigid) {
    return ApplyRigid(mesh, RigidParams::FromVector(params));
  }
  return PoseMesh(mesh, *skeleton,
                  PoseParams::FromVector(params, skeleton->NumJoints()),
                  config.threads);
}

RenderSettings Scene::FitRender() const {
  return RenderSettings{config.render.samples_per_axis, config.render.p0,
                        config.render.p1};
}

RenderSettings Scene::TargetRender() const {
  return RenderSettings{config.render.target_samples_per_axis.value_or(
                            config.render.samples_per_axis),
                        config.render.p0, config.render.p1};
}

MultiViewTargets RenderTargets(const Scene& scene,
                               std::span<const double> params) {
  const TriangleMesh posed = scene.Evaluate(params).mesh;
  RasterOptions raster;
  raster.threads = scene.config.threads;
  MultiViewTargets targets;
  for (const Camera& cam : scene.cameras) {
    const Projection p = Project(posed, cam);
    targets.push_back(ViewTarget{
        cam, Rasterize(p.screen, cam.height, cam.width, scene.TargetRender(),
                       raster)});
  }
  return targets;
}

FitProblem MakeFitProblem(const Scene& scene, MultiViewTargets targets) {
  FitProblem problem;
  problem.model = [&scene](std::span<const double> p) {
    return scene.Evaluate(p);
  };
  problem.targets = std::move(targets);
  problem.objective.lambda = scene.config.lambda;
  problem.render = scene.FitRender();
  problem.truth_vertices = scene.Evaluate(scene.truth).mesh.vertices;
  problem.free = scene.free;
  return problem;
}

FitOptions MakeFitOptions(const Scene& scene) {
  FitOptions options;
  options.iterations = scene.config.iterations;
  options.adam = scene.config.adam;
  options.threads = scene.config.threads;
  return options;
}

}  // namespace silrender
