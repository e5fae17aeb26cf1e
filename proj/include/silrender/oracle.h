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

// Reference implementations for verification. Nothing here is used by the
// forward or backward rendering path.

#ifndef SILRENDER_ORACLE_H_
#define SILRENDER_ORACLE_H_

#include <array>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "silrender/geometry.h"
#include "silrender/raster_forward.h"

namespace silrender::oracle {

using Triangle = std::array<Vec2, 3>;

// p0 + (p1 - p0) * area(triangle intersected with pixel) / area(pixel),
// computed by polygon clipping. Throws std::invalid_argument for a degenerate
// triangle.
double ExactPixelCoverage(const Triangle& triangle, const Rect& pixel,
                          double p0, double p1);

SilhouetteImage ExactImage(const Triangle& triangle, int height, int width,
                           double p0, double p1);

// Sum of per-triangle coverages; exact only when the triangles do not
// overlap.
SilhouetteImage ExactImage(std::span<const Triangle> triangles, int height,
                           int width, double p0, double p1);

// Central differences (f(x + h e_i) - f(x - h e_i)) / (2h). The divisor uses
// the representable step actually taken.
std::vector<double> FiniteDifference(
    const std::function<double(std::span<const double>)>& fn,
    std::span<const double> params, double h);

// |a - b| / max(|a|, |b|, abs_floor). With a relative tolerance `rel`, pairs
// near zero then pass on an absolute error of rel * abs_floor.
double RelativeError(double a, double b, double abs_floor);

// Uniform point in [lo_x, hi_x] x [lo_y, hi_y].
Vec2 RandomPoint(std::mt19937_64& rng, double lo_x, double hi_x, double lo_y,
                 double hi_y);

// A triangle inside [margin, W - margin] x [margin, H - margin] with positive
// signed area of at least min_area.
Triangle RandomTriangle(std::mt19937_64& rng, int height, int width,
                        double margin, double min_area = 4.0);

// An edge a->b crossing `pixel` with both endpoints outside it, plus a far
// third vertex c on the foreground side chosen so that edges b->c and c->a
// stay clear of the pixel. The coverage of triangle (a, b, c) in the pixel
// then depends on a and b only through edge a->b.
struct EdgePixelCase {
  Vec2 a;
  Vec2 b;
  Vec2 c;
  Rect pixel;
};

EdgePixelCase RandomEdgePixelCase(std::mt19937_64& rng,
                                  double min_clip_length = 1e-3);

}  // namespace silrender::oracle

#endif  // SILRENDER_ORACLE_H_
