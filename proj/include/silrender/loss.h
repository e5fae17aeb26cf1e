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

// Multi-view silhouette objective and the per-vertex error metric.

#ifndef SILRENDER_LOSS_H_
#define SILRENDER_LOSS_H_

#include <functional>
#include <span>
#include <vector>

#include "silrender/geometry.h"
#include "silrender/projection.h"
#include "silrender/raster_forward.h"

namespace silrender {

struct ViewTarget {
  Camera camera;
  SilhouetteImage image;
};

using MultiViewTargets = std::vector<ViewTarget>;

// Throws std::invalid_argument unless there is at least one view and all
// views share dimensions, p0 and p1, and match their camera's image size.
void ValidateTargets(const MultiViewTargets& targets);

struct SilhouetteLoss {
  double value = 0.0;
  std::vector<std::vector<double>> grads;  // per view, 2 (I - S), row-major
};

// Sum over views and pixels of (I - S)^2.
SilhouetteLoss ComputeSilhouetteLoss(std::span<const SilhouetteImage> rendered,
                                     const MultiViewTargets& targets);

struct RegularizerValue {
  double value = 0.0;
  std::vector<Vec3> grads;  // per vertex
};

using Regularizer = std::function<RegularizerValue(const TriangleMesh&)>;

struct Objective {
  double lambda = 0.001;
  Regularizer regularizer;  // empty means identically zero
};

struct ObjectiveValue {
  double e = 0.0;
  double e_sl = 0.0;
  double e_reg = 0.0;
  std::vector<Vec3> grads;  // dE/d(vertex), per vertex
  std::vector<SilhouetteImage> renders;
};

// E = E_sl + lambda * E_reg. Each view is projected, rendered and
// differentiated in turn and the gradients summed in view order.
ObjectiveValue EvaluateObjective(const TriangleMesh& mesh,
                                 const MultiViewTargets& targets,
                                 const Objective& objective,
                                 const RenderSettings& settings,
                                 int threads = 1);

// Mean Euclidean distance between corresponding vertices.
double PerVertexError(std::span<const Vec3> estimated,
                      std::span<const Vec3> truth);

}  // namespace silrender

#endif  // SILRENDER_LOSS_H_
