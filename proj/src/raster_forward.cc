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

#include "silrender/raster_forward.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "silrender/parallel.h"

namespace silrender {

void RenderSettings::Validate() const {
  if (samples_per_axis < 1) {
    throw std::invalid_argument("samples_per_axis must be >= 1");
  }
  if (!std::isfinite(p0) || !std::isfinite(p1) || p0 == p1) {
    throw std::invalid_argument("p0 and p1 must be finite and distinct");
  }
}

bool PointInTriangle(const Vec2& p, const Vec2& a, const Vec2& b,
                     const Vec2& c) {
  auto edge = [&p](const Vec2& u, const Vec2& v) {
    return (v.x() - u.x()) * (p.y() - u.y()) - (v.y() - u.y()) * (p.x() - u.x());
  };
  const double e0 = edge(a, b);
  const double e1 = edge(b, c);
  const double e2 = edge(c, a);
  return (e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0) ||
         (e0 <= 0.0 && e1 <= 0.0 && e2 <= 0.0);
}

namespace {

bool UsableFace(const ScreenMesh& screen, const Face& f, Rect* box) {
  const Vec2& a = screen.vertices[f[0]];
  const Vec2& b = screen.vertices[f[1]];
  const Vec2& c = screen.vertices[f[2]];
  if (!a.allFinite() || !b.allFinite() || !c.allFinite()) return false;
  if (SignedArea(a, b, c) == 0.0) return false;
  *box = FaceBoundingBox(a, b, c);
  return true;
}

bool Overlaps(const Rect& box, const Rect& region) {
  return box.x_max >= region.x_min && box.x_min <= region.x_max &&
         box.y_max >= region.y_min && box.y_min <= region.y_max;
}

// Counts the samples of pixel (row, col) covered by any of `candidates`.
int CountHits(const ScreenMesh& screen, const std::vector<int>& candidates,
              const std::vector<Rect>& boxes, int row, int col, int f) {
  const Rect pixel = Rect::Pixel(row, col);
  // Faces whose bounding box touches this pixel; usually a handful.
  thread_local std::vector<int> local;
  local.clear();
  for (int face : candidates) {
    if (Overlaps(boxes[face], pixel)) local.push_back(face);
  }
  if (local.empty()) return 0;
  int hits = 0;
  for (int v = 0; v < f; ++v) {
    const double y = SampleCoord(row, v, f);
    for (int u = 0; u < f; ++u) {
      const Vec2 p(SampleCoord(col, u, f), y);
      for (int face : local) {
        const Face& tri = screen.faces[face];
        if (PointInTriangle(p, screen.vertices[tri[0]],
                            screen.vertices[tri[1]],
                            screen.vertices[tri[2]])) {
          ++hits;
          break;
        }
      }
    }
  }
  return hits;
}

}  // namespace

TileBins CoverageAccelerator(const ScreenMesh& screen, int height, int width) {
  TileBins bins;
  bins.height = height;
  bins.width = width;
  bins.tiles_x = (width + TileBins::kTileSize - 1) / TileBins::kTileSize;
  bins.tiles_y = (height + TileBins::kTileSize - 1) / TileBins::kTileSize;
  bins.faces.resize(static_cast<std::size_t>(bins.tiles_x) * bins.tiles_y);
  for (std::size_t fi = 0; fi < screen.faces.size(); ++fi) {
    Rect box;
    if (!UsableFace(screen, screen.faces[fi], &box)) continue;
    if (box.x_max < 0.0 || box.y_max < 0.0 || box.x_min > width ||
        box.y_min > height) {
      continue;
    }
    const int tx0 = std::max(
        0, static_cast<int>(std::floor(box.x_min / TileBins::kTileSize)));
    const int ty0 = std::max(
        0, static_cast<int>(std::floor(box.y_min / TileBins::kTileSize)));
    const int tx1 = std::min(
        bins.tiles_x - 1,
        static_cast<int>(std::floor(box.x_max / TileBins::kTileSize)));
    const int ty1 = std::min(
        bins.tiles_y - 1,
        static_cast<int>(std::floor(box.y_max / TileBins::kTileSize)));
    for (int ty = ty0; ty <= ty1; ++ty) {
      for (int tx = tx0; tx <= tx1; ++tx) {
        bins.faces[static_cast<std::size_t>(ty) * bins.tiles_x + tx].push_back(
            static_cast<int>(fi));
      }
    }
  }
  return bins;
}

SilhouetteImage Rasterize(const ScreenMesh& screen, int height, int width,
                          const RenderSettings& settings,
                          const RasterOptions& options) {
  settings.Validate();
  if (height < 1 || width < 1) {
    throw std::invalid_argument("image size must be at least 1x1");
  }
  SilhouetteImage image(height, width, settings.p0, settings.p1);
  const int f = settings.samples_per_axis;
  const double per_hit = settings.p1 - settings.p0;
  const int samples = f * f;
  auto value = [&](int hits) {
    if (hits == 0) return settings.p0;
    if (hits == samples) return settings.p1;
    return settings.p0 + per_hit * hits / samples;
  };

  std::vector<Rect> boxes(screen.faces.size());
  std::vector<int> all_faces;
  for (std::size_t fi = 0; fi < screen.faces.size(); ++fi) {
    if (UsableFace(screen, screen.faces[fi], &boxes[fi])) {
      all_faces.push_back(static_cast<int>(fi));
    }
  }

  if (!options.use_accelerator) {
    ParallelFor(static_cast<std::size_t>(height), options.threads,
                [&](std::size_t row) {
                  for (int col = 0; col < width; ++col) {
                    const int hits =
                        CountHits(screen, all_faces, boxes,
                                  static_cast<int>(row), col, f);
                    image.at(static_cast<int>(row), col) = value(hits);
                  }
                });
    return image;
  }

  const TileBins bins = CoverageAccelerator(screen, height, width);
  ParallelFor(bins.faces.size(), options.threads, [&](std::size_t tile) {
    const std::vector<int>& candidates = bins.faces[tile];
    if (candidates.empty()) return;
    const int ty = static_cast<int>(tile) / bins.tiles_x;
    const int tx = static_cast<int>(tile) % bins.tiles_x;
    const int row_end = std::min(height, (ty + 1) * TileBins::kTileSize);
    const int col_end = std::min(width, (tx + 1) * TileBins::kTileSize);
    for (int row = ty * TileBins::kTileSize; row < row_end; ++row) {
      for (int col = tx * TileBins::kTileSize; col < col_end; ++col) {
        const int hits = CountHits(screen, candidates, boxes, row, col, f);
        image.at(row, col) = value(hits);
      }
    }
  });
  return image;
}

}  // namespace silrender
