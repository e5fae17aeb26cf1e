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

#include "silrender/articulated_model.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

#include "silrender/parallel.h"

namespace silrender {
namespace {

Eigen::Matrix3d Skew(const Vec3& w) {
  Eigen::Matrix3d k;
  k << 0.0, -w.z(), w.y(),  //
      w.z(), 0.0, -w.x(),   //
      -w.y(), w.x(), 0.0;
  return k;
}

// Below this angle the trigonometric ratios come from their series.
constexpr double kSeriesAngle = 1e-2;

}  // namespace

AxisAngleRotation AxisAngleToMatrix(const Vec3& axis_angle) {
  const double t2 = axis_angle.squaredNorm();
  const double t = std::sqrt(t2);
  // R = I + a K + b K^2 with a = sin t / t, b = (1 - cos t) / t^2, and
  // da/dt / t, db/dt / t for the derivatives.
  double a, b, da, db;
  if (t < kSeriesAngle) {
    const double t4 = t2 * t2;
    a = 1.0 - t2 / 6.0 + t4 / 120.0;
    b = 0.5 - t2 / 24.0 + t4 / 720.0;
    da = -1.0 / 3.0 + t2 / 30.0 - t4 / 840.0;
    db = -1.0 / 12.0 + t2 / 180.0 - t4 / 6720.0;
  } else {
    const double s = std::sin(t);
    const double c = std::cos(t);
    const double half = std::sin(0.5 * t);
    a = s / t;
    b = 2.0 * half * half / t2;
    da = (t * c - s) / (t2 * t);
    db = (t * s - 2.0 * (1.0 - c)) / (t2 * t2);
  }
  const Eigen::Matrix3d k = Skew(axis_angle);
  const Eigen::Matrix3d k2 = k * k;
  AxisAngleRotation out;
  out.rotation = Eigen::Matrix3d::Identity() + a * k + b * k2;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Matrix3d e = Skew(Vec3::Unit(i));
    const double w = axis_angle[i];
    out.derivatives[i] = (da * w) * k + a * e + (db * w) * k2 + b * (e * k + k * e);
  }
  return out;
}

std::vector<double> RigidParams::ToVector() const {
  return {translation.x(), translation.y(), translation.z(), rotation.x(),
          rotation.y(),    rotation.z(),    scale};
}

RigidParams RigidParams::FromVector(std::span<const double> v) {
  if (v.size() != kSize) {
    throw std::invalid_argument("rigid parameters need 7 values, got " +
                                std::to_string(v.size()));
  }
  RigidParams p;
  p.translation = Vec3(v[0], v[1], v[2]);
  p.rotation = Vec3(v[3], v[4], v[5]);
  p.scale = v[6];
  return p;
}

PosedMesh ApplyRigid(const TriangleMesh& mesh, const RigidParams& params) {
  if (!(params.scale > 0.0)) {
    throw std::invalid_argument("rigid scale must be positive");
  }
  const AxisAngleRotation rot = AxisAngleToMatrix(params.rotation);
  const std::size_t n = mesh.vertices.size();
  PosedMesh out;
  out.mesh.faces = mesh.faces;
  out.mesh.vertices.resize(n);
  out.jacobian = Eigen::MatrixXd::Zero(3 * n, RigidParams::kSize);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& v = mesh.vertices[k];
    const Vec3 rv = rot.rotation * v;
    out.mesh.vertices[k] = params.scale * rv + params.translation;
    auto rows = out.jacobian.block(3 * k, 0, 3, RigidParams::kSize);
    rows.block<3, 3>(0, 0).setIdentity();
    for (int i = 0; i < 3; ++i) {
      rows.col(3 + i) = params.scale * (rot.derivatives[i] * v);
    }
    rows.col(6) = rv;
  }
  return out;
}

int Skeleton::JointIndex(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return static_cast<int>(j);
  }
  return -1;
}

void Skeleton::Validate(std::size_t num_vertices) const {
  const int n = NumJoints();
  if (n < 1) throw std::invalid_argument("skeleton has no joints");
  if (parents.size() != joints.size()) {
    throw std::invalid_argument("skeleton parents/joints size mismatch");
  }
  if (!names.empty() && names.size() != joints.size()) {
    throw std::invalid_argument("skeleton names/joints size mismatch");
  }
  if (parents[0] != -1) {
    throw std::invalid_argument("skeleton root must be joint 0");
  }
  for (int j = 1; j < n; ++j) {
    if (parents[j] < 0 || parents[j] >= n || parents[j] == j) {
      throw std::invalid_argument("joint " + std::to_string(j) +
                                  " has invalid parent " +
                                  std::to_string(parents[j]));
    }
    // Every chain must reach the root within n steps.
    int cur = j, steps = 0;
    while (cur != 0) {
      cur = parents[cur];
      if (++steps > n) {
        throw std::invalid_argument("joint " + std::to_string(j) +
                                    " is on a parent cycle");
      }
    }
  }
  if (weights.size() != num_vertices) {
    throw std::invalid_argument("skeleton has weights for " +
                                std::to_string(weights.size()) +
                                " vertices, mesh has " +
                                std::to_string(num_vertices));
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto& list = weights[k];
    if (list.empty() || list.size() > 4) {
      throw std::invalid_argument("vertex " + std::to_string(k) +
                                  " needs 1 to 4 influences");
    }
    double sum = 0.0;
    for (const SkinWeight& w : list) {
      if (w.joint < 0 || w.joint >= n) {
        throw std::invalid_argument("vertex " + std::to_string(k) +
                                    " references joint " +
                                    std::to_string(w.joint));
      }
      if (!(w.weight >= 0.0)) {
        throw std::invalid_argument("vertex " + std::to_string(k) +
                                    " has a negative weight");
      }
      sum += w.weight;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument("weights of vertex " + std::to_string(k) +
                                  " sum to " + std::to_string(sum));
    }
  }
}

PoseParams PoseParams::Zero(int num_joints) {
  PoseParams p;
  p.theta.assign(num_joints, Vec3::Zero());
  return p;
}

std::vector<double> PoseParams::ToVector() const {
  std::vector<double> v;
  v.reserve(3 * theta.size() + 3);
  for (const Vec3& t : theta) v.insert(v.end(), {t.x(), t.y(), t.z()});
  v.insert(v.end(), {translation.x(), translation.y(), translation.z()});
  return v;
}

PoseParams PoseParams::FromVector(std::span<const double> v, int num_joints) {
  if (static_cast<int>(v.size()) != Size(num_joints)) {
    throw std::invalid_argument(
        "pose vector has " + std::to_string(v.size()) + " values, expected " +
        std::to_string(Size(num_joints)));
  }
  PoseParams p;
  p.theta.resize(num_joints);
  for (int j = 0; j < num_joints; ++j) {
    p.theta[j] = Vec3(v[3 * j], v[3 * j + 1], v[3 * j + 2]);
  }
  p.translation = Vec3(v[3 * num_joints], v[3 * num_joints + 1],
                       v[3 * num_joints + 2]);
  return p;
}

PosedMesh PoseMesh(const TriangleMesh& mesh, const Skeleton& skeleton,
                   const PoseParams& pose, int threads) {
  skeleton.Validate(mesh.vertices.size());
  const int num_joints = skeleton.NumJoints();
  if (static_cast<int>(pose.theta.size()) != num_joints) {
    throw std::invalid_argument("pose has " + std::to_string(pose.theta.size()) +
                                " joint rotations, skeleton has " +
                                std::to_string(num_joints));
  }

  // Process joints parents-first.
  std::vector<int> order;
  {
    std::vector<std::vector<int>> children(num_joints);
    for (int j = 1; j < num_joints; ++j) children[skeleton.parents[j]].push_back(j);
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int c : children[order[i]]) order.push_back(c);
    }
  }

  // World transform of joint j: x -> rot[j] * (x - J_j) + origin[j].
  std::vector<Eigen::Matrix3d> rot(num_joints);
  std::vector<Vec3> origin(num_joints);
  // d(world point)/d(theta_j[i]) = lever[j][i] * (world point - origin[j]).
  std::vector<std::array<Eigen::Matrix3d, 3>> lever(num_joints);
  for (int j : order) {
    const AxisAngleRotation local = AxisAngleToMatrix(pose.theta[j]);
    const int p = skeleton.parents[j];
    const Eigen::Matrix3d parent_rot =
        p < 0 ? Eigen::Matrix3d::Identity() : rot[p];
    rot[j] = parent_rot * local.rotation;
    origin[j] = p < 0 ? skeleton.joints[j]
                      : Vec3(parent_rot * (skeleton.joints[j] -
                                           skeleton.joints[p]) +
                             origin[p]);
    for (int i = 0; i < 3; ++i) {
      lever[j][i] = parent_rot * local.derivatives[i] *
                    local.rotation.transpose() * parent_rot.transpose();
    }
  }

  const std::size_t n = mesh.vertices.size();
  const int num_params = PoseParams::Size(num_joints);
  PosedMesh out;
  out.mesh.faces = mesh.faces;
  out.mesh.vertices.resize(n);
  out.jacobian = Eigen::MatrixXd::Zero(3 * n, num_params);
  ParallelFor(n, threads, [&](std::size_t k) {
    const Vec3& v = mesh.vertices[k];
    Vec3 posed = Vec3::Zero();
    for (const SkinWeight& w : skeleton.weights[k]) {
      const int j = w.joint;
      const Vec3 x = rot[j] * (v - skeleton.joints[j]) + origin[j];
      posed += w.weight * x;
      for (int m = j; m >= 0; m = skeleton.parents[m]) {
        const Vec3 arm = x - origin[m];
        for (int i = 0; i < 3; ++i) {
          out.jacobian.block<3, 1>(3 * k, 3 * m + i) +=
              w.weight * (lever[m][i] * arm);
        }
      }
    }
    out.mesh.vertices[k] = posed + pose.translation;
    out.jacobian.block<3, 3>(3 * k, 3 * num_joints).setIdentity();
  });
  return out;
}

void ToyBodySpec::Validate() const {
  if (limbs.empty()) throw std::invalid_argument("toy body has no limbs");
  if (segments < 3) throw std::invalid_argument("toy body segments must be >= 3");
  if (rings < 2) throw std::invalid_argument("toy body rings must be >= 2");
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    const LimbSpec& l = limbs[i];
    const std::string where = "limb " + std::to_string(i) + " (" + l.name + ")";
    if (!(l.radius > 0.0)) {
      throw std::invalid_argument(where + ": radius must be positive");
    }
    if (!((l.end - l.start).norm() > 0.0)) {
      throw std::invalid_argument(where + ": length must be positive");
    }
    if (i == 0 ? l.parent != -1
               : (l.parent < 0 || l.parent >= static_cast<int>(i))) {
      throw std::invalid_argument(where + ": parent must precede it");
    }
  }
}

ToyBodySpec ToyBodySpec::Humanoid() {
  ToyBodySpec s;
  // Y up, about two units tall, arms in an A-pose.
  s.limbs = {
      {"pelvis", -1, Vec3(0.0, 0.0, 0.0), Vec3(0.0, 0.25, 0.0), 0.17},
      {"spine", 0, Vec3(0.0, 0.25, 0.0), Vec3(0.0, 0.5, 0.0), 0.15},
      {"chest", 1, Vec3(0.0, 0.5, 0.0), Vec3(0.0, 0.75, 0.0), 0.17},
      {"neck", 2, Vec3(0.0, 0.75, 0.0), Vec3(0.0, 1.0, 0.0), 0.11},
      {"l_shoulder", 2, Vec3(0.2, 0.7, 0.0), Vec3(0.5, 0.45, 0.0), 0.06},
      {"l_elbow", 4, Vec3(0.5, 0.45, 0.0), Vec3(0.75, 0.2, 0.0), 0.05},
      {"r_shoulder", 2, Vec3(-0.2, 0.7, 0.0), Vec3(-0.5, 0.45, 0.0), 0.06},
      {"r_elbow", 6, Vec3(-0.5, 0.45, 0.0), Vec3(-0.75, 0.2, 0.0), 0.05},
      {"l_hip", 0, Vec3(0.1, -0.05, 0.0), Vec3(0.15, -0.5, 0.0), 0.08},
      {"l_knee", 8, Vec3(0.15, -0.5, 0.0), Vec3(0.18, -0.95, 0.0), 0.065},
      {"r_hip", 0, Vec3(-0.1, -0.05, 0.0), Vec3(-0.15, -0.5, 0.0), 0.08},
      {"r_knee", 10, Vec3(-0.15, -0.5, 0.0), Vec3(-0.18, -0.95, 0.0), 0.065},
  };
  return s;
}

ToyBodySpec ToyBodySpec::Arm() {
  ToyBodySpec s;
  s.limbs = {
      {"shoulder", -1, Vec3(-0.5, 0.0, 0.0), Vec3(0.0, 0.0, 0.0), 0.12},
      {"elbow", 0, Vec3(0.0, 0.0, 0.0), Vec3(0.5, 0.0, 0.0), 0.1},
  };
  return s;
}

ToyBody MakeToyBody(const ToyBodySpec& spec) {
  spec.Validate();
  ToyBody body;
  const int segs = spec.segments;
  const int rings = spec.rings;
  for (std::size_t li = 0; li < spec.limbs.size(); ++li) {
    const LimbSpec& limb = spec.limbs[li];
    const int joint = static_cast<int>(li);
    body.skeleton.names.push_back(limb.name);
    body.skeleton.joints.push_back(limb.start);
    body.skeleton.parents.push_back(limb.parent);

    const Vec3 axis = (limb.end - limb.start).normalized();
    // Any unit vector perpendicular to the axis, then u x w = axis.
    const Vec3 helper =
        std::abs(axis.y()) < 0.9 ? Vec3::UnitY() : Vec3::UnitX();
    const Vec3 u = helper.cross(axis).normalized();
    const Vec3 w = axis.cross(u);

    const int base = static_cast<int>(body.mesh.vertices.size());
    auto one_hot = std::vector<SkinWeight>{{joint, 1.0}};
    auto blended = limb.parent >= 0 && spec.smooth_weights
                       ? std::vector<SkinWeight>{{limb.parent, 0.5}, {joint, 0.5}}
                       : one_hot;
    for (int r = 0; r < rings; ++r) {
      const double t = static_cast<double>(r) / (rings - 1);
      const Vec3 center = limb.start + t * (limb.end - limb.start);
      for (int s = 0; s < segs; ++s) {
        const double phi = 2.0 * std::numbers::pi * s / segs;
        body.mesh.vertices.push_back(
            center + limb.radius * (std::cos(phi) * u + std::sin(phi) * w));
        body.skeleton.weights.push_back(r == 0 ? blended : one_hot);
      }
    }
    const int start_pole = static_cast<int>(body.mesh.vertices.size());
    body.mesh.vertices.push_back(limb.start - 0.5 * limb.radius * axis);
    body.skeleton.weights.push_back(blended);
    const int end_pole = start_pole + 1;
    body.mesh.vertices.push_back(limb.end + 0.5 * limb.radius * axis);
    body.skeleton.weights.push_back(one_hot);

    // Outward-facing counterclockwise winding.
    auto at = [&](int r, int s) { return base + r * segs + (s % segs); };
    for (int r = 0; r + 1 < rings; ++r) {
      for (int s = 0; s < segs; ++s) {
        body.mesh.faces.push_back(Face{at(r, s), at(r, s + 1), at(r + 1, s)});
        body.mesh.faces.push_back(
            Face{at(r, s + 1), at(r + 1, s + 1), at(r + 1, s)});
      }
    }
    for (int s = 0; s < segs; ++s) {
      body.mesh.faces.push_back(Face{start_pole, at(0, s + 1), at(0, s)});
      body.mesh.faces.push_back(
          Face{end_pole, at(rings - 1, s), at(rings - 1, s + 1)});
    }
  }
  body.mesh.Validate();
  body.skeleton.Validate(body.mesh.vertices.size());
  return body;
}

}  // namespace silrender
