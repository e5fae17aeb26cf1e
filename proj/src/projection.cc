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

#include "silrender/projection.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>

namespace silrender {

void Camera::Validate() const {
  if (!(focal > 0.0) || !std::isfinite(focal)) {
    throw std::invalid_argument("camera focal must be positive");
  }
  if (height < 1 || width < 1) {
    throw std::invalid_argument("camera image size must be at least 1x1");
  }
  const Eigen::Matrix3d gram = rotation * rotation.transpose();
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9 ||
      rotation.determinant() < 0.0) {
    throw std::invalid_argument("camera rotation is not a proper rotation");
  }
  if (!translation.allFinite() || !principal_point.allFinite()) {
    throw std::invalid_argument("camera translation/principal point not finite");
  }
}

Projection Project(const TriangleMesh& mesh, const Camera& camera) {
  Projection out;
  const std::size_t n = mesh.vertices.size();
  out.screen.vertices.resize(n);
  out.screen.depths.resize(n);
  out.jacobians.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 pc = camera.ToCamera(mesh.vertices[k]);
    Eigen::Matrix<double, 2, 3> d_screen_d_cam;
    if (camera.kind == CameraKind::kOrthographic) {
      out.screen.vertices[k] =
          camera.focal * pc.head<2>() + camera.principal_point;
      d_screen_d_cam << camera.focal, 0.0, 0.0, 0.0, camera.focal, 0.0;
    } else {
      const double z = pc.z();
      if (!(z > kDepthEpsilon)) {
        throw std::domain_error("vertex " + std::to_string(k) +
                                " is at or behind the camera plane (depth " +
                                std::to_string(z) + ")");
      }
      const double f_over_z = camera.focal / z;
      out.screen.vertices[k] = f_over_z * pc.head<2>() + camera.principal_point;
      d_screen_d_cam << f_over_z, 0.0, -f_over_z * pc.x() / z,  //
          0.0, f_over_z, -f_over_z * pc.y() / z;
    }
    out.screen.depths[k] = pc.z();
    out.jacobians[k] = d_screen_d_cam * camera.rotation;
  }

  out.screen.faces.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) {
    out.screen.faces.push_back(Face{f[0], f[2], f[1]});
  }
  return out;
}

std::vector<Vec3> BackprojectGradients(std::span<const Vec2> screen_grads,
                                       const ProjectionJacobians& jacobians) {
  if (screen_grads.size() != jacobians.size()) {
    throw std::invalid_argument(
        "BackprojectGradients: " + std::to_string(screen_grads.size()) +
        " gradients for " + std::to_string(jacobians.size()) + " jacobians");
  }
  std::vector<Vec3> out(screen_grads.size());
  for (std::size_t k = 0; k < screen_grads.size(); ++k) {
    out[k] = jacobians[k].transpose() * screen_grads[k];
  }
  return out;
}

Camera LookAt(const Vec3& eye, const Vec3& target, const Vec3& up,
              const Camera& intrinsics) {
  const Vec3 forward = (target - eye).normalized();
  Vec3 right = forward.cross(up);
  if (right.norm() < 1e-12) {
    // Looking along the up axis; any perpendicular works.
    right = forward.cross(Vec3::UnitZ());
    if (right.norm() < 1e-12) right = forward.cross(Vec3::UnitX());
  }
  right.normalize();
  const Vec3 down = forward.cross(right);

  Camera camera = intrinsics;
  camera.rotation.row(0) = right.transpose();
  camera.rotation.row(1) = down.transpose();
  camera.rotation.row(2) = forward.transpose();
  camera.translation = -camera.rotation * eye;
  return camera;
}

std::vector<Camera> MakeTurntableCameras(int count, double radius,
                                         double elevation_deg,
                                         const Vec3& look_at,
                                         const Camera& intrinsics) {
  if (count < 1) throw std::invalid_argument("turntable needs count >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("turntable radius <= 0");
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double elevation = elevation_deg * kDeg;
  std::vector<Camera> cameras;
  cameras.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double azimuth = (360.0 * k / count) * kDeg;
    const Vec3 offset(std::cos(elevation) * std::sin(azimuth),
                      std::sin(elevation),
                      std::cos(elevation) * std::cos(azimuth));
    cameras.push_back(
        LookAt(look_at + radius * offset, look_at, Vec3::UnitY(), intrinsics));
  }
  return cameras;
}

}  // namespace silrender
