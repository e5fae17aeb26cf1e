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

#ifndef SILRENDER_RASTER_FORWARD_H_
#define SILRENDER_RASTER_FORWARD_H_

#include <vector>

#include "silrender/geometry.h"

namespace silrender {

struct RenderSettings {
  // Supersampling factor per axis; each pixel averages F*F samples.
  int samples_per_axis = 4;
  double p0 = 0.0;  // background intensity
  double p1 = 1.0;  // foreground intensity

  void Validate() const;
};

// Row-major H x W intensities.
struct SilhouetteImage {
  int height = 0;
  int width = 0;
  double p0 = 0.0;
  double p1 = 1.0;
  std::vector<double> data;

  SilhouetteImage() = default;
  SilhouetteImage(int h, int w, double background, double foreground)
      : height(h), width(w), p0(background), p1(foreground),
        data(static_cast<std::size_t>(h) * w, background) {}

  double& at(int row, int col) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  double at(int row, int col) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return data.size(); }
};

// Inclusive of the boundary and independent of the winding of a, b, c.
bool PointInTriangle(const Vec2& p, const Vec2& a, const Vec2& b,
                     const Vec2& c);

// Screen-space x of sub-sample `sub` (0..F-1) in pixel column `col`; the same
// formula gives y from the row.
inline double SampleCoord(int pixel, int sub, int samples_per_axis) {
  return pixel + (sub + 0.5) / samples_per_axis;
}

// Faces binned into square tiles of kTileSize pixels by bounding box overlap.
// Degenerate (zero area) faces are left out.
struct TileBins {
  static constexpr int kTileSize = 16;
  int height = 0;
  int width = 0;
  int tiles_x = 0;
  int tiles_y = 0;
  std::vector<std::vector<int>> faces;  // row-major over tiles

  const std::vector<int>& ForPixel(int row, int col) const {
    return faces[static_cast<std::size_t>(row / kTileSize) * tiles_x +
                 col / kTileSize];
  }
};

TileBins CoverageAccelerator(const ScreenMesh& screen, int height, int width);

struct RasterOptions {
  bool use_accelerator = true;
  int threads = 1;
};

// Supersampled silhouette: a sample is foreground when it falls inside any
// non-degenerate face, regardless of facing. Pixel value is
// p0 + (p1 - p0) * hits / F^2.
SilhouetteImage Rasterize(const ScreenMesh& screen, int height, int width,
                          const RenderSettings& settings,
                          const RasterOptions& options = {});

}  // namespace silrender

#endif  // SILRENDER_RASTER_FORWARD_H_
