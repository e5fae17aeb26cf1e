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

#ifndef SILRENDER_PROJECTION_H_
#define SILRENDER_PROJECTION_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "silrender/geometry.h"

namespace silrender {

enum class CameraKind { kOrthographic, kPerspective };

// Camera frame: x right, y down, z forward (into the scene). World points map
// to the camera frame as rotation * p + translation.
struct Camera {
  CameraKind kind = CameraKind::kPerspective;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  // Pixels for a perspective camera, pixels per world unit for orthographic.
  double focal = 1.0;
  Vec2 principal_point = Vec2::Zero();
  int height = 64;
  int width = 64;

  Vec3 ToCamera(const Vec3& world) const {
    return rotation * world + translation;
  }
  // Camera center in world coordinates.
  Vec3 Center() const { return -rotation.transpose() * translation; }

  // Throws std::invalid_argument on a non-positive focal, empty image or a
  // rotation that is not orthonormal within 1e-9.
  void Validate() const;
};

inline constexpr double kDepthEpsilon = 1e-6;

// d(screen vertex) / d(world vertex), one 2x3 block per vertex.
using Jacobian23 = Eigen::Matrix<double, 2, 3>;
using ProjectionJacobians = std::vector<Jacobian23>;

struct Projection {
  ScreenMesh screen;
  ProjectionJacobians jacobians;
};

// Projects every vertex. Face winding is reversed on the way to screen space:
// triangles wound counterclockwise around an outward normal that faces the
// camera come out with positive SignedArea. Throws std::domain_error naming
// the vertex when a perspective depth is not above kDepthEpsilon.
Projection Project(const TriangleMesh& mesh, const Camera& camera);

// g3[k] = J[k]^T * g2[k].
std::vector<Vec3> BackprojectGradients(std::span<const Vec2> screen_grads,
                                       const ProjectionJacobians& jacobians);

// Camera at `eye` looking at `target`; `up` is the world up direction.
// Intrinsics and image size are copied from `intrinsics`.
Camera LookAt(const Vec3& eye, const Vec3& target, const Vec3& up,
              const Camera& intrinsics);

// `count` cameras on a circle of `radius` around `look_at` (world up = +y),
// at azimuths k * 360 / count degrees measured from +z towards +x.
std::vector<Camera> MakeTurntableCameras(int count, double radius,
                                         double elevation_deg,
                                         const Vec3& look_at,
                                         const Camera& intrinsics);

}  // namespace silrender

#endif  // SILRENDER_PROJECTION_H_
