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

// Optimizable geometry: a rigid transform model and a kinematic-chain body
// posed by linear blend skinning, both with exact Jacobians.

#ifndef SILRENDER_ARTICULATED_MODEL_H_
#define SILRENDER_ARTICULATED_MODEL_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "silrender/geometry.h"

namespace silrender {

// Rodrigues rotation and its partials with respect to the three axis-angle
// components.
struct AxisAngleRotation {
  Eigen::Matrix3d rotation;
  std::array<Eigen::Matrix3d, 3> derivatives;
};

AxisAngleRotation AxisAngleToMatrix(const Vec3& axis_angle);

// Vertex positions plus d(vertex)/d(parameter): row 3k + c is coordinate c
// of vertex k.
struct PosedMesh {
  TriangleMesh mesh;
  Eigen::MatrixXd jacobian;
};

struct RigidParams {
  static constexpr int kSize = 7;  // tx ty tz rx ry rz scale

  Vec3 translation = Vec3::Zero();
  Vec3 rotation = Vec3::Zero();  // axis-angle
  double scale = 1.0;

  std::vector<double> ToVector() const;
  static RigidParams FromVector(std::span<const double> v);
};

// v -> scale * R(rotation) * v + translation. Throws std::invalid_argument
// unless scale > 0.
PosedMesh ApplyRigid(const TriangleMesh& mesh, const RigidParams& params);

struct SkinWeight {
  int joint = 0;
  double weight = 0.0;
};

struct Skeleton {
  std::vector<std::string> names;
  std::vector<Vec3> joints;   // rest-pose positions
  std::vector<int> parents;   // -1 for the root, which must be joint 0
  std::vector<std::vector<SkinWeight>> weights;  // per vertex, at most 4

  int NumJoints() const { return static_cast<int>(joints.size()); }
  // Throws std::invalid_argument naming the problem: parents not a tree
  // rooted at 0, weights referencing missing joints, more than 4 influences,
  // negative weights, or weights not summing to 1 within 1e-6.
  void Validate(std::size_t num_vertices) const;
  int JointIndex(const std::string& name) const;  // -1 if absent
};

struct PoseParams {
  std::vector<Vec3> theta;  // per joint, axis-angle relative to the parent
  Vec3 translation = Vec3::Zero();

  static PoseParams Zero(int num_joints);
  static int Size(int num_joints) { return 3 * num_joints + 3; }
  // Layout: theta_0 .. theta_{J-1}, then the root translation.
  std::vector<double> ToVector() const;
  static PoseParams FromVector(std::span<const double> v, int num_joints);
};

PosedMesh PoseMesh(const TriangleMesh& mesh, const Skeleton& skeleton,
                   const PoseParams& pose, int threads = 1);

struct LimbSpec {
  std::string name;
  int parent = -1;  // index into ToyBodySpec::limbs
  Vec3 start;       // joint location
  Vec3 end;
  double radius = 0.1;
};

struct ToyBodySpec {
  std::vector<LimbSpec> limbs;
  int segments = 12;  // around each limb
  int rings = 4;      // along each limb
  // Split the weight of each limb's first ring and start cap evenly with the
  // parent limb instead of using one-hot weights.
  bool smooth_weights = false;

  void Validate() const;
  static ToyBodySpec Humanoid();
  static ToyBodySpec Arm();
};

struct ToyBody {
  TriangleMesh mesh;
  Skeleton skeleton;
};

// One closed tube per limb, capped by a pole vertex at each end; joint j is
// limb j's start point.
ToyBody MakeToyBody(const ToyBodySpec& spec);

}  // namespace silrender

#endif  // SILRENDER_ARTICULATED_MODEL_H_
