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

#include "silrender/loss.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "silrender/raster_backward.h"

namespace silrender {

void ValidateTargets(const MultiViewTargets& targets) {
  if (targets.empty()) throw std::invalid_argument("no target views");
  const SilhouetteImage& first = targets[0].image;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const SilhouetteImage& img = targets[i].image;
    const std::string view = "view " + std::to_string(i);
    if (img.height != first.height || img.width != first.width) {
      throw std::invalid_argument(view + ": image size differs from view 0");
    }
    if (img.p0 != first.p0 || img.p1 != first.p1) {
      throw std::invalid_argument(view + ": intensities differ from view 0");
    }
    if (img.height != targets[i].camera.height ||
        img.width != targets[i].camera.width) {
      throw std::invalid_argument(view + ": camera image size mismatch");
    }
    if (img.size() != static_cast<std::size_t>(img.height) * img.width) {
      throw std::invalid_argument(view + ": image data size mismatch");
    }
  }
}

SilhouetteLoss ComputeSilhouetteLoss(std::span<const SilhouetteImage> rendered,
                                     const MultiViewTargets& targets) {
  if (rendered.size() != targets.size()) {
    throw std::invalid_argument("loss: " + std::to_string(rendered.size()) +
                                " renders for " +
                                std::to_string(targets.size()) + " targets");
  }
  SilhouetteLoss out;
  out.grads.resize(rendered.size());
  for (std::size_t v = 0; v < rendered.size(); ++v) {
    const SilhouetteImage& img = rendered[v];
    const SilhouetteImage& target = targets[v].image;
    if (img.height != target.height || img.width != target.width ||
        img.size() != target.size()) {
      throw std::invalid_argument("loss: view " + std::to_string(v) +
                                  " dimension mismatch");
    }
    std::vector<double>& g = out.grads[v];
    g.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
      const double d = img.data[i] - target.data[i];
      out.value += d * d;
      g[i] = 2.0 * d;
    }
  }
  return out;
}

ObjectiveValue EvaluateObjective(const TriangleMesh& mesh,
                                 const MultiViewTargets& targets,
                                 const Objective& objective,
                                 const RenderSettings& settings,
                                 int threads) {
  if (!(objective.lambda >= 0.0)) {
    throw std::invalid_argument("objective lambda must be >= 0");
  }
  ValidateTargets(targets);
  settings.Validate();
  ObjectiveValue out;
  out.grads.assign(mesh.vertices.size(), Vec3::Zero());
  RasterOptions raster;
  raster.threads = threads;
  BackwardOptions backward;
  backward.samples_per_axis = settings.samples_per_axis;
  backward.threads = threads;

  std::vector<Projection> projections;
  projections.reserve(targets.size());
  for (const ViewTarget& view : targets) {
    projections.push_back(Project(mesh, view.camera));
    out.renders.push_back(Rasterize(projections.back().screen,
                                    view.image.height, view.image.width,
                                    settings, raster));
  }
  const SilhouetteLoss loss = ComputeSilhouetteLoss(out.renders, targets);
  out.e_sl = loss.value;
  for (std::size_t v = 0; v < targets.size(); ++v) {
    const ScreenGradients g2 = Backward(out.renders[v], loss.grads[v],
                                        projections[v].screen, backward);
    const std::vector<Vec3> g3 =
        BackprojectGradients(g2, projections[v].jacobians);
    for (std::size_t k = 0; k < g3.size(); ++k) out.grads[k] += g3[k];
  }

  if (objective.regularizer) {
    const RegularizerValue reg = objective.regularizer(mesh);
    if (reg.grads.size() != mesh.vertices.size()) {
      throw std::invalid_argument("regularizer returned " +
                                  std::to_string(reg.grads.size()) +
                                  " gradients for " +
                                  std::to_string(mesh.vertices.size()) +
                                  " vertices");
    }
    out.e_reg = reg.value;
    for (std::size_t k = 0; k < reg.grads.size(); ++k) {
      out.grads[k] += objective.lambda * reg.grads[k];
    }
  }
  out.e = out.e_sl + objective.lambda * out.e_reg;
  return out;
}

double PerVertexError(std::span<const Vec3> estimated,
                      std::span<const Vec3> truth) {
  if (estimated.size() != truth.size()) {
    throw std::invalid_argument("per-vertex error: " +
                                std::to_string(estimated.size()) + " vs " +
                                std::to_string(truth.size()) + " vertices");
  }
  if (estimated.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    sum += (estimated[k] - truth[k]).norm();
  }
  return sum / static_cast<double>(truth.size());
}

}  // namespace silrender
