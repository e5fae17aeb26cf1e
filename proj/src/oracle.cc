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

#include "silrender/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "silrender/clip.h"

namespace silrender::oracle {

double ExactPixelCoverage(const Triangle& triangle, const Rect& pixel,
                          double p0, double p1) {
  if (SignedArea(triangle[0], triangle[1], triangle[2]) == 0.0) {
    throw std::invalid_argument("ExactPixelCoverage: degenerate triangle");
  }
  // Work in pixel-local coordinates.
  const Vec2 origin(pixel.x_min, pixel.y_min);
  const Vec2 local[3] = {triangle[0] - origin, triangle[1] - origin,
                         triangle[2] - origin};
  const Rect unit{0.0, 0.0, pixel.Width(), pixel.Height()};
  const Polygon clipped = ClipPolygonToRect(local, unit);
  const double fraction = PolygonArea(clipped) / unit.Area();
  return p0 + (p1 - p0) * fraction;
}

SilhouetteImage ExactImage(const Triangle& triangle, int height, int width,
                           double p0, double p1) {
  return ExactImage(std::span<const Triangle>(&triangle, 1), height, width, p0,
                    p1);
}

SilhouetteImage ExactImage(std::span<const Triangle> triangles, int height,
                           int width, double p0, double p1) {
  SilhouetteImage image(height, width, p0, p1);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const Rect pixel = Rect::Pixel(r, c);
      double fraction = 0.0;
      for (const Triangle& t : triangles) {
        fraction += ExactPixelCoverage(t, pixel, 0.0, 1.0);
      }
      image.at(r, c) = p0 + (p1 - p0) * fraction;
    }
  }
  return image;
}

std::vector<double> FiniteDifference(
    const std::function<double(std::span<const double>)>& fn,
    std::span<const double> params, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("FiniteDifference: h <= 0");
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> grad(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    const double up = saved + h;
    const double down = saved - h;
    x[i] = up;
    const double f_up = fn(x);
    x[i] = down;
    const double f_down = fn(x);
    x[i] = saved;
    grad[i] = (f_up - f_down) / (up - down);
  }
  return grad;
}

double RelativeError(double a, double b, double abs_floor) {
  const double diff = std::abs(a - b);
  return diff / std::max({std::abs(a), std::abs(b), abs_floor});
}

Vec2 RandomPoint(std::mt19937_64& rng, double lo_x, double hi_x, double lo_y,
                 double hi_y) {
  std::uniform_real_distribution<double> ux(lo_x, hi_x);
  std::uniform_real_distribution<double> uy(lo_y, hi_y);
  const double x = ux(rng);
  return Vec2(x, uy(rng));
}

Triangle RandomTriangle(std::mt19937_64& rng, int height, int width,
                        double margin, double min_area) {
  for (;;) {
    Triangle t;
    for (Vec2& v : t) {
      v = RandomPoint(rng, margin, width - margin, margin, height - margin);
    }
    double area = SignedArea(t[0], t[1], t[2]);
    if (std::abs(area) < min_area) continue;
    if (area < 0.0) std::swap(t[1], t[2]);
    return t;
  }
}

EdgePixelCase RandomEdgePixelCase(std::mt19937_64& rng,
                                  double min_clip_length) {
  std::uniform_int_distribution<int> cell(0, 63);
  for (;;) {
    EdgePixelCase out;
    out.pixel = Rect::Pixel(cell(rng), cell(rng));
    const Rect& px = out.pixel;
    const Rect grown{px.x_min - 1e-3, px.y_min - 1e-3, px.x_max + 1e-3,
                     px.y_max + 1e-3};
    auto inside = [&grown](const Vec2& v) {
      return v.x() >= grown.x_min && v.x() <= grown.x_max &&
             v.y() >= grown.y_min && v.y() <= grown.y_max;
    };
    out.a = RandomPoint(rng, px.x_min - 2.0, px.x_max + 2.0, px.y_min - 2.0,
                        px.y_max + 2.0);
    out.b = RandomPoint(rng, px.x_min - 2.0, px.x_max + 2.0, px.y_min - 2.0,
                        px.y_max + 2.0);
    if (inside(out.a) || inside(out.b)) continue;
    const auto clip = LiangBarskyClip({out.a, out.b}, px);
    if (!clip || (clip->b - clip->a).norm() <= min_clip_length) continue;
    // Foreground lies along -(A, B).
    const Vec2 normal(out.b.y() - out.a.y(), out.a.x() - out.b.x());
    out.c = 0.5 * (out.a + out.b) - 50.0 * normal.normalized();
    if (LiangBarskyClip({out.b, out.c}, grown) ||
        LiangBarskyClip({out.c, out.a}, grown)) {
      continue;
    }
    return out;
  }
}

}  // namespace silrender::oracle
