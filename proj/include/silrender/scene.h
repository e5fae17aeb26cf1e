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

// Builds fitting problems (model, cameras, ground truth, initialization)
// from a SceneConfig.

#ifndef SILRENDER_SCENE_H_
#define SILRENDER_SCENE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "silrender/articulated_model.h"
#include "silrender/config.h"
#include "silrender/loss.h"
#include "silrender/optimizer.h"
#include "silrender/projection.h"

namespace silrender {

enum class FitMode { kRigid, kPose };

struct Scene {
  SceneConfig config;
  FitMode mode = FitMode::kPose;
  TriangleMesh mesh;                  // rest / template mesh
  std::optional<ToyBodySpec> body;    // arm and humanoid
  std::optional<Skeleton> skeleton;
  std::vector<Camera> cameras;
  std::vector<std::string> param_names;
  std::vector<double> truth;
  std::vector<double> init;
  std::vector<bool> free;
  std::vector<int> perturbed_joints;  // pose mode

  PosedMesh Evaluate(std::span<const double> params) const;
  RenderSettings FitRender() const;
  RenderSettings TargetRender() const;
};

// The random ground-truth pose is drawn from config.seed. Throws ConfigError
// for settings that do not fit the model (for example pose mode on an OBJ
// mesh or an unknown joint name).
Scene BuildScene(const SceneConfig& config, FitMode mode);

// The cameras for a config; perspective focal defaults to 2 * min(H, W),
// orthographic scale to 0.4 * min(H, W), the principal point to the image
// center.
std::vector<Camera> BuildCameras(const SceneConfig& config);

// Renders the model at `params` from every camera with the target settings.
MultiViewTargets RenderTargets(const Scene& scene,
                               std::span<const double> params);

FitProblem MakeFitProblem(const Scene& scene, MultiViewTargets targets);
FitOptions MakeFitOptions(const Scene& scene);

}  // namespace silrender

#endif  // SILRENDER_SCENE_H_
