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

#ifndef SILRENDER_RASTER_BACKWARD_H_
#define SILRENDER_RASTER_BACKWARD_H_

#include <cstdint>
#include <span>
#include <vector>

#include "silrender/clip.h"
#include "silrender/geometry.h"
#include "silrender/raster_forward.h"

namespace silrender {

// Line through (x0, y0) and (x1, y1) written as A x + B y + C = 0 with
// A = y1 - y0, B = x0 - x1, C = x1 y0 - x0 y1. Foreground is where the left
// hand side is negative.
struct EdgeCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

EdgeCoefficients ComputeEdgeCoefficients(const Vec2& va, const Vec2& vb);

// Edges with A^2 + B^2 at or below this have no usable direction.
inline constexpr double kDegenerateEdgeThreshold = 1e-18;

// d I(pixel) / d(endpoint coordinate) contributed by one edge.
struct EdgePixelPartials {
  double d_x0 = 0.0;
  double d_y0 = 0.0;
  double d_x1 = 0.0;
  double d_y1 = 0.0;
};

// Closed-form derivative of the pixel's area-averaged intensity with respect
// to the endpoints of edge va->vb, foreground on the negative side of the
// edge. The integration limits come from the Liang-Barsky clip of the edge
// against `pixel`; S is the pixel area. All four partials are zero when the
// clip is empty. An edge lying on the pixel border gets half weight, since the
// neighbouring pixel on the other side of the border receives the other half.
// Throws std::invalid_argument for a degenerate edge.
EdgePixelPartials ComputeEdgePixelPartials(const Vec2& va, const Vec2& vb,
                                           const Rect& pixel, double p0,
                                           double p1);

struct BoundaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> marked;  // row-major

  bool at(int row, int col) const {
    return marked[static_cast<std::size_t>(row) * width + col] != 0;
  }
  std::size_t Count() const;
};

// Marks pixels whose value lies strictly between p0 and p1 or differs from
// one of its 4-neighbours.
BoundaryMask DetectBoundaryPixels(const SilhouetteImage& image);

// A mesh edge that may lie on the silhouette outline, directed so that the
// foreground is on its negative side. `faces` are the (up to two) faces that
// share it, -1 when absent.
struct DirectedEdge {
  int a = 0;
  int b = 0;
  int faces[2] = {-1, -1};
};

// Open-boundary edges and edges between a front-facing and a back-facing
// face (faces with zero projected area are ignored when classifying). Output
// is sorted by (min vertex, max vertex).
std::vector<DirectedEdge> SilhouetteEdges(const ScreenMesh& screen);

// True iff the clip of `seg` against `pixel` has positive length.
bool EdgeIntersectsPixel(const Segment& seg, const Rect& pixel);

// dL / d(screen vertex), one entry per vertex.
using ScreenGradients = std::vector<Vec2>;

struct BackwardOptions {
  // Supersampling factor of the forward pass; sets the occlusion probe
  // distance of half a sub-sample.
  int samples_per_axis = 4;
  int threads = 1;
  // Skip edge/pixel pairs whose background side is covered by another face.
  bool occlusion_filter = true;
};

struct BackwardStats {
  std::size_t edge_pixel_pairs = 0;  // partials evaluated
  std::size_t pixels_touched = 0;    // distinct pixels with >= 1 evaluation
  std::vector<std::uint8_t> touched;  // row-major, H x W
};

// Per-pixel loss gradients to per-vertex screen gradients. Only pixels marked
// by DetectBoundaryPixels(image) are visited; each silhouette edge is tested
// against the boundary pixels inside its bounding box. The result is
// bitwise independent of options.threads.
ScreenGradients Backward(const SilhouetteImage& image,
                         std::span<const double> loss_grads,
                         const ScreenMesh& screen,
                         const BackwardOptions& options = {},
                         BackwardStats* stats = nullptr);

// G(i, j) = sum_k dI(i, j)/dv_k . dvertex_dparam[k], over the image rendered
// with `settings`. Row-major H x W.
std::vector<double> ParameterGradientImage(
    const ScreenMesh& screen, std::span<const Vec2> dvertex_dparam,
    int height, int width, const RenderSettings& settings, int threads = 1);

}  // namespace silrender

#endif  // SILRENDER_RASTER_BACKWARD_H_
