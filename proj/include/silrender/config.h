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

// Scene configuration: one JSON document with every field defaulted.

#ifndef SILRENDER_CONFIG_H_
#define SILRENDER_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "silrender/geometry.h"
#include "silrender/optimizer.h"
#include "silrender/projection.h"

namespace silrender {

// A bad or missing configuration value; field() is the dotted JSON path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class ModelKind { kTriangle, kArm, kHumanoid, kObj };

struct ModelConfig {
  ModelKind kind = ModelKind::kHumanoid;
  std::string obj_path;  // kObj only
  int segments = 12;
  int rings = 4;
  bool smooth_weights = false;
};

struct CameraViewpoint {
  Vec3 eye = Vec3::Zero();
  Vec3 target = Vec3::Zero();
  Vec3 up = Vec3::UnitY();
};

struct CameraConfig {
  CameraKind kind = CameraKind::kPerspective;
  std::optional<double> focal;            // default 2 * min(H, W)
  std::optional<Vec2> principal_point;    // default image center
  int count = 4;
  double radius = 5.0;
  double elevation_deg = 0.0;
  Vec3 look_at = Vec3::Zero();
  std::vector<CameraViewpoint> list;      // overrides the turntable
};

struct RenderConfig {
  int height = 64;
  int width = 64;
  int samples_per_axis = 4;
  std::optional<int> target_samples_per_axis;  // default samples_per_axis
  double p0 = 0.0;
  double p1 = 1.0;
};

enum class FreeSet { kAllJoints, kPerturbed, kAll };

struct PoseConfig {
  std::vector<std::string> joints;  // perturbed joints; empty picks randomly
  int perturbed_joints = 3;
  double min_angle_deg = 15.0;
  double max_angle_deg = 30.0;
  FreeSet free = FreeSet::kAllJoints;
  std::vector<double> init;  // empty means the zero pose
};

struct RigidConfig {
  std::vector<double> truth = {0, 0, 0, 0, 0, 0, 1};
  std::vector<double> init = {3, 4, 0, 0, 0, 0, 1};
  std::vector<std::string> free = {"tx", "ty"};
};

struct SceneConfig {
  ModelConfig model;
  CameraConfig cameras;
  RenderConfig render;
  double lambda = 0.001;
  AdamOptions adam;
  int iterations = 2000;
  PoseConfig pose;
  RigidConfig rigid;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Parses a JSON document. Unknown keys and ill-typed or out-of-range values
// throw ConfigError naming the field.
SceneConfig ParseSceneConfig(const std::string& json_text);
SceneConfig LoadSceneConfig(const std::string& path);
std::string SceneConfigToJson(const SceneConfig& config);

// Throws ConfigError for inconsistent values.
void ValidateSceneConfig(const SceneConfig& config);

}  // namespace silrender

#endif  // SILRENDER_CONFIG_H_
