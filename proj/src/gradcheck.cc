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


#include "silrender/gradcheck.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <span>

#include "silrender/articulated_model.h"
#include "silrender/oracle.h"
#include "silrender/projection.h"
#include "silrender/raster_backward.h"

namespace silrender::oracle {
namespace {

constexpr double kFloor = 1e-3;

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::vector<double> CoverageFd(const Vec2& a, const Vec2& b, const Vec2& c,
                               const Rect& pixel, double p0, double p1) {
  const std::vector<double> params = {a.x(), a.y(), b.x(), b.y()};
  return FiniteDifference(
      [&](std::span<const double> x) {
        return ExactPixelCoverage(
            Triangle{Vec2(x[0], x[1]), Vec2(x[2], x[3]), c}, pixel, p0, p1);
      },
      params, 1e-5);
}

// Max relative error between an analytic Jacobian and central differences,
// one column (parameter) at a time.
double JacobianError(
    const std::function<std::vector<double>(std::span<const double>)>& fn,
    const std::vector<double>& params, const Eigen::MatrixXd& jacobian,
    double h) {
  double worst = 0.0;
  std::vector<double> x = params;
  for (std::size_t col = 0; col < params.size(); ++col) {
    const double up = params[col] + h;
    const double down = params[col] - h;
    x[col] = up;
    const std::vector<double> f_up = fn(x);
    x[col] = down;
    const std::vector<double> f_down = fn(x);
    x[col] = params[col];
    for (std::size_t row = 0; row < f_up.size(); ++row) {
      const double fd = (f_up[row] - f_down[row]) / (up - down);
      worst = std::max(
          worst, RelativeError(jacobian(static_cast<Eigen::Index>(row),
                                        static_cast<Eigen::Index>(col)),
                               fd, kFloor));
    }
  }
  return worst;
}

std::vector<double> Flatten(const std::vector<Vec3>& v) {
  std::vector<double> out;
  out.reserve(3 * v.size());
  for (const Vec3& p : v) out.insert(out.end(), {p.x(), p.y(), p.z()});
  return out;
}

}  // namespace

CheckResult CheckEdgePartials(std::uint64_t seed, int cases) {
  CheckResult r{"edge partials vs exact-coverage FD", cases, 0.0, 1e-6};
  Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> intensity(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const EdgePixelCase ec = RandomEdgePixelCase(rng);
    double p0 = intensity(rng), p1 = intensity(rng);
    if (std::abs(p1 - p0) < 0.1) p1 = p0 > 0.5 ? p0 - 0.5 : p0 + 0.5;
    const EdgePixelPartials p =
        ComputeEdgePixelPartials(ec.a, ec.b, ec.pixel, p0, p1);
    const std::vector<double> fd =
        CoverageFd(ec.a, ec.b, ec.c, ec.pixel, p0, p1);
    const double analytic[4] = {p.d_x0, p.d_y0, p.d_x1, p.d_y1};
    for (int k = 0; k < 4; ++k) {
      r.max_error = std::max(r.max_error, RelativeError(analytic[k], fd[k],
                                                        kFloor));
    }
  }
  r.seconds = clock.Seconds();
  return r;
}

CheckResult CheckWorkedExamples() {
  CheckResult r{"worked examples", 2, 0.0, 1e-12};
  Stopwatch clock;
  const Rect pixel = Rect::Pixel(0, 0);
  const EdgePixelPartials v =
      ComputeEdgePixelPartials({0.5, 0.0}, {0.5, 1.0}, pixel, 0.0, 1.0);
  const EdgePixelPartials h =
      ComputeEdgePixelPartials({0.0, 0.5}, {1.0, 0.5}, pixel, 0.0, 1.0);
  const double got[8] = {v.d_x0, v.d_y0, v.d_x1, v.d_y1,
                         h.d_x0, h.d_y0, h.d_x1, h.d_y1};
  const double want[8] = {0.5, 0.0, 0.5, 0.0, 0.0, -0.5, 0.0, -0.5};
  for (int k = 0; k < 8; ++k) {
    r.max_error = std::max(r.max_error, std::abs(got[k] - want[k]));
  }
  r.seconds = clock.Seconds();
  return r;
}

CheckResult CheckTriangleLoss(std::uint64_t seed, int trials, int size) {
  CheckResult r{"triangle sum-of-squares loss vs FD", trials, 0.0, 1e-5};
  Stopwatch clock;
  std::mt19937_64 rng(seed);
  auto loss = [size](const Triangle& t) {
    double sum = 0.0;
    for (double v : ExactImage(t, size, size, 0.0, 1.0).data) sum += v * v;
    return sum;
  };
  for (int trial = 0; trial < trials; ++trial) {
    const Triangle t = RandomTriangle(rng, size, size, 1.5, 6.0);
    const SilhouetteImage exact = ExactImage(t, size, size, 0.0, 1.0);
    std::vector<double> grads(exact.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      grads[i] = 2.0 * exact.data[i];
    }
    ScreenMesh screen;
    screen.vertices = {t[0], t[1], t[2]};
    screen.faces = {Face{0, 1, 2}};
    screen.depths = {1.0, 1.0, 1.0};
    const ScreenGradients g = Backward(exact, grads, screen);
    std::vector<double> params;
    for (const Vec2& v : t) params.insert(params.end(), {v.x(), v.y()});
    const std::vector<double> fd = FiniteDifference(
        [&](std::span<const double> x) {
          return loss(Triangle{Vec2(x[0], x[1]), Vec2(x[2], x[3]),
                               Vec2(x[4], x[5])});
        },
        params, 1e-5);
    for (int k = 0; k < 3; ++k) {
      r.max_error = std::max({r.max_error,
                              RelativeError(g[k].x(), fd[2 * k], kFloor),
                              RelativeError(g[k].y(), fd[2 * k + 1], kFloor)});
    }
  }
  r.seconds = clock.Seconds();
  return r;
}

CheckResult CheckProjectionJacobians(std::uint64_t seed, int trials) {
  CheckResult r{"projection Jacobians vs FD", trials, 0.0, 1e-6};
  Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < trials; ++trial) {
    Camera intrinsics;
    intrinsics.kind = trial % 2 == 0 ? CameraKind::kPerspective
                                     : CameraKind::kOrthographic;
    intrinsics.focal = intrinsics.kind == CameraKind::kPerspective ? 128 : 25;
    intrinsics.principal_point = Vec2(32.0, 32.0);
    const Vec3 eye = 5.0 * Vec3(u(rng), 0.5 * u(rng), u(rng)).normalized();
    const Camera cam = LookAt(eye, Vec3::Zero(), Vec3::UnitY(), intrinsics);
    TriangleMesh cloud;
    for (int k = 0; k < 8; ++k) cloud.vertices.emplace_back(u(rng), u(rng), u(rng));
    const Projection proj = Project(cloud, cam);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(16, 24);
    for (int k = 0; k < 8; ++k) jac.block<2, 3>(2 * k, 3 * k) = proj.jacobians[k];
    r.max_error = std::max(
        r.max_error,
        JacobianError(
            [&](std::span<const double> x) {
              TriangleMesh moved;
              for (std::size_t k = 0; k < 8; ++k) {
                moved.vertices.emplace_back(x[3 * k], x[3 * k + 1],
                                            x[3 * k + 2]);
              }
              std::vector<double> out;
              for (const Vec2& s : Project(moved, cam).screen.vertices) {
                out.insert(out.end(), {s.x(), s.y()});
              }
              return out;
            },
            Flatten(cloud.vertices), jac, 1e-4));
  }
  r.seconds = clock.Seconds();
  return r;
}

CheckResult CheckModelJacobians(std::uint64_t seed, int trials) {
  CheckResult r{"skinning and rigid Jacobians vs FD", 2 * trials, 0.0, 1e-6};
  Stopwatch clock;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  ToyBodySpec spec = ToyBodySpec::Humanoid();
  for (int trial = 0; trial < trials; ++trial) {
    spec.smooth_weights = trial % 2 == 1;
    const ToyBody body = MakeToyBody(spec);
    const int joints = body.skeleton.NumJoints();
    PoseParams pose = PoseParams::Zero(joints);
    for (Vec3& t : pose.theta) t = 0.4 * Vec3(n01(rng), n01(rng), n01(rng));
    pose.translation = 0.2 * Vec3(n01(rng), n01(rng), n01(rng));
    const PosedMesh posed = PoseMesh(body.mesh, body.skeleton, pose);
    r.max_error = std::max(
        r.max_error,
        JacobianError(
            [&](std::span<const double> x) {
              return Flatten(PoseMesh(body.mesh, body.skeleton,
                                      PoseParams::FromVector(x, joints))
                                 .mesh.vertices);
            },
            pose.ToVector(), posed.jacobian, 1e-6));

    RigidParams rigid;
    rigid.translation = Vec3(n01(rng), n01(rng), n01(rng));
    rigid.rotation = Vec3(n01(rng), n01(rng), n01(rng));
    rigid.scale = 1.0 + 0.2 * std::abs(n01(rng));
    const PosedMesh moved = ApplyRigid(body.mesh, rigid);
    r.max_error = std::max(
        r.max_error,
        JacobianError(
            [&](std::span<const double> x) {
              return Flatten(
                  ApplyRigid(body.mesh, RigidParams::FromVector(x))
                      .mesh.vertices);
            },
            rigid.ToVector(), moved.jacobian, 1e-6));
  }
  r.seconds = clock.Seconds();
  return r;
}

std::vector<CheckResult> RunGradientChecks(std::uint64_t seed) {
  return {CheckEdgePartials(seed), CheckWorkedExamples(),
          CheckTriangleLoss(seed + 1), CheckProjectionJacobians(seed + 2),
          CheckModelJacobians(seed + 3)};
}

}  // namespace silrender::oracle
