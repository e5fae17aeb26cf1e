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

#include "silrender/raster_backward.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "silrender/parallel.h"

namespace silrender {

EdgeCoefficients ComputeEdgeCoefficients(const Vec2& va, const Vec2& vb) {
  return EdgeCoefficients{vb.y() - va.y(), va.x() - vb.x(),
                          vb.x() * va.y() - va.x() * vb.y()};
}

namespace {

// Partials for an edge whose clip against `pixel` is `clipped`.
//
// With the substitution t = A x + B y, k = -B x + A y the line integral of
// d p / d x0 over the pixel reduces to an integral over k in [k0, k1], the
// images of the clipped endpoints. Everything is evaluated relative to the
// pixel corner; the partials are invariant under a common translation and the
// shift keeps C small.
EdgePixelPartials PartialsFromClip(const Vec2& va, const Vec2& vb,
                                   const Segment& clipped, const Rect& pixel,
                                   double p0, double p1) {
  const Vec2 origin(pixel.x_min, pixel.y_min);
  const Vec2 a = va - origin;
  const Vec2 b = vb - origin;
  const Vec2 ca = clipped.a - origin;
  const Vec2 cb = clipped.b - origin;
  const double x0 = a.x(), y0 = a.y(), x1 = b.x(), y1 = b.y();

  const EdgeCoefficients e = ComputeEdgeCoefficients(a, b);
  const double len2 = e.a * e.a + e.b * e.b;
  if (!(len2 > kDegenerateEdgeThreshold)) {
    throw std::invalid_argument("degenerate edge passed to edge partials");
  }

  const double k0 = -e.b * ca.x() + e.a * ca.y();
  const double k1 = -e.b * cb.x() + e.a * cb.y();
  const double dk = k1 - k0;
  const double dk2 = dk * (k1 + k0);  // k1^2 - k0^2

  double scale = (p1 - p0) / (pixel.Area() * len2);
  // An edge running along the pixel border is shared with the neighbour.
  if ((ca.x() == cb.x() && (ca.x() == 0.0 || ca.x() == pixel.Width())) ||
      (ca.y() == cb.y() && (ca.y() == 0.0 || ca.y() == pixel.Height()))) {
    scale *= 0.5;
  }

  const double bc = e.b * e.c / len2;
  const double ac = e.a * e.c / len2;
  const double half_dk2 = dk2 / (2.0 * len2);

  EdgePixelPartials out;
  out.d_x0 = scale * ((y1 + bc) * dk - e.a * half_dk2);
  out.d_y0 = -scale * ((x1 + ac) * dk + e.b * half_dk2);
  out.d_x1 = scale * (-(y0 + bc) * dk + e.a * half_dk2);
  out.d_y1 = scale * ((x0 + ac) * dk + e.b * half_dk2);
  return out;
}

}  // namespace

EdgePixelPartials ComputeEdgePixelPartials(const Vec2& va, const Vec2& vb,
                                           const Rect& pixel, double p0,
                                           double p1) {
  const EdgeCoefficients e = ComputeEdgeCoefficients(va, vb);
  if (!(e.a * e.a + e.b * e.b > kDegenerateEdgeThreshold)) {
    throw std::invalid_argument("degenerate edge passed to edge partials");
  }
  const std::optional<Segment> clipped = LiangBarskyClip({va, vb}, pixel);
  if (!clipped) return {};
  return PartialsFromClip(va, vb, *clipped, pixel, p0, p1);
}

std::size_t BoundaryMask::Count() const {
  return static_cast<std::size_t>(
      std::count_if(marked.begin(), marked.end(),
                    [](std::uint8_t m) { return m != 0; }));
}

BoundaryMask DetectBoundaryPixels(const SilhouetteImage& image) {
  BoundaryMask mask;
  mask.height = image.height;
  mask.width = image.width;
  mask.marked.assign(image.size(), 0);
  const double lo = std::min(image.p0, image.p1);
  const double hi = std::max(image.p0, image.p1);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      const double v = image.at(r, c);
      bool edge = v > lo && v < hi;
      if (!edge && r > 0) edge = image.at(r - 1, c) != v;
      if (!edge && r + 1 < image.height) edge = image.at(r + 1, c) != v;
      if (!edge && c > 0) edge = image.at(r, c - 1) != v;
      if (!edge && c + 1 < image.width) edge = image.at(r, c + 1) != v;
      mask.marked[static_cast<std::size_t>(r) * image.width + c] = edge;
    }
  }
  return mask;
}

std::vector<DirectedEdge> SilhouetteEdges(const ScreenMesh& screen) {
  struct HalfEdge {
    int lo, hi;  // undirected key
    int from, to;
    int face;
    int facing;  // +1 front, -1 back, 0 degenerate
  };
  std::vector<HalfEdge> half_edges;
  half_edges.reserve(screen.faces.size() * 3);
  for (std::size_t fi = 0; fi < screen.faces.size(); ++fi) {
    const Face& f = screen.faces[fi];
    const double area = SignedArea(screen.vertices[f[0]],
                                   screen.vertices[f[1]],
                                   screen.vertices[f[2]]);
    const int facing = area > 0.0 ? 1 : (area < 0.0 ? -1 : 0);
    for (int k = 0; k < 3; ++k) {
      const int from = f[k];
      const int to = f[(k + 1) % 3];
      half_edges.push_back(HalfEdge{std::min(from, to), std::max(from, to),
                                    from, to, static_cast<int>(fi), facing});
    }
  }
  std::sort(half_edges.begin(), half_edges.end(),
            [](const HalfEdge& x, const HalfEdge& y) {
              return std::tie(x.lo, x.hi, x.face) < std::tie(y.lo, y.hi, y.face);
            });

  std::vector<DirectedEdge> out;
  std::size_t i = 0;
  while (i < half_edges.size()) {
    std::size_t j = i;
    while (j < half_edges.size() && half_edges[j].lo == half_edges[i].lo &&
           half_edges[j].hi == half_edges[i].hi) {
      ++j;
    }
    int front = 0, back = 0;
    const HalfEdge* first_front = nullptr;
    const HalfEdge* first_back = nullptr;
    for (std::size_t k = i; k < j; ++k) {
      if (half_edges[k].facing > 0) {
        ++front;
        if (!first_front) first_front = &half_edges[k];
      } else if (half_edges[k].facing < 0) {
        ++back;
        if (!first_back) first_back = &half_edges[k];
      }
    }
    if (front + back == 1 || (front > 0 && back > 0)) {
      DirectedEdge e;
      if (first_front) {
        e.a = first_front->from;
        e.b = first_front->to;
      } else {
        e.a = first_back->to;
        e.b = first_back->from;
      }
      e.faces[0] = half_edges[i].face;
      e.faces[1] = j - i > 1 ? half_edges[i + 1].face : -1;
      out.push_back(e);
    }
    i = j;
  }
  return out;
}

bool EdgeIntersectsPixel(const Segment& seg, const Rect& pixel) {
  return LiangBarskyClip(seg, pixel).has_value();
}

namespace {

struct EdgePixelRecord {
  int pixel;
  EdgePixelPartials partials;
};

bool ProbeCovered(const ScreenMesh& screen, const TileBins& bins,
                  const DirectedEdge& edge, const Vec2& probe) {
  auto covers = [&](int fi) {
    if (fi == edge.faces[0] || fi == edge.faces[1]) return false;
    const Face& f = screen.faces[fi];
    return PointInTriangle(probe, screen.vertices[f[0]],
                           screen.vertices[f[1]], screen.vertices[f[2]]);
  };
  const int col = static_cast<int>(std::floor(probe.x()));
  const int row = static_cast<int>(std::floor(probe.y()));
  if (row >= 0 && row < bins.height && col >= 0 && col < bins.width) {
    for (int fi : bins.ForPixel(row, col)) {
      if (covers(fi)) return true;
    }
    return false;
  }
  for (std::size_t fi = 0; fi < screen.faces.size(); ++fi) {
    const Face& f = screen.faces[fi];
    if (SignedArea(screen.vertices[f[0]], screen.vertices[f[1]],
                   screen.vertices[f[2]]) == 0.0) {
      continue;
    }
    if (covers(static_cast<int>(fi))) return true;
  }
  return false;
}

// Evaluates the partials of every (silhouette edge, boundary pixel) pair.
// records[e] lists the pixels of edge e in row-major order.
std::vector<std::vector<EdgePixelRecord>> CollectEdgePixelPartials(
    const ScreenMesh& screen, const std::vector<DirectedEdge>& edges,
    const BoundaryMask& mask, double p0, double p1,
    const BackwardOptions& options) {
  const int height = mask.height;
  const int width = mask.width;
  const TileBins bins = CoverageAccelerator(screen, height, width);
  const double probe_offset = 0.5 / options.samples_per_axis;

  std::vector<std::vector<EdgePixelRecord>> records(edges.size());
  ParallelFor(edges.size(), options.threads, [&](std::size_t ei) {
    const DirectedEdge& edge = edges[ei];
    const Vec2& va = screen.vertices[edge.a];
    const Vec2& vb = screen.vertices[edge.b];
    const EdgeCoefficients coeff = ComputeEdgeCoefficients(va, vb);
    const double len2 = coeff.a * coeff.a + coeff.b * coeff.b;
    if (!(len2 > kDegenerateEdgeThreshold)) return;
    const Vec2 background_dir = Vec2(coeff.a, coeff.b) / std::sqrt(len2);

    // Pixels whose closed square touches the edge's bounding box.
    const double x_lo = std::min(va.x(), vb.x());
    const double x_hi = std::max(va.x(), vb.x());
    const double y_lo = std::min(va.y(), vb.y());
    const double y_hi = std::max(va.y(), vb.y());
    if (x_hi < 0.0 || y_hi < 0.0 || x_lo > width || y_lo > height) return;
    const int c0 = std::max(0, static_cast<int>(std::ceil(x_lo)) - 1);
    const int r0 = std::max(0, static_cast<int>(std::ceil(y_lo)) - 1);
    const int c1 = std::min(width - 1, static_cast<int>(std::floor(x_hi)));
    const int r1 = std::min(height - 1, static_cast<int>(std::floor(y_hi)));

    std::vector<EdgePixelRecord>& out = records[ei];
    for (int r = r0; r <= r1; ++r) {
      for (int c = c0; c <= c1; ++c) {
        if (!mask.at(r, c)) continue;
        const Rect pixel = Rect::Pixel(r, c);
        const std::optional<Segment> clipped = LiangBarskyClip({va, vb}, pixel);
        if (!clipped) continue;
        if (options.occlusion_filter) {
          const Vec2 mid = 0.5 * (clipped->a + clipped->b);
          if (ProbeCovered(screen, bins, edge,
                           mid + probe_offset * background_dir)) {
            continue;
          }
        }
        out.push_back(EdgePixelRecord{
            r * width + c, PartialsFromClip(va, vb, *clipped, pixel, p0, p1)});
      }
    }
  });
  return records;
}

}  // namespace

ScreenGradients Backward(const SilhouetteImage& image,
                         std::span<const double> loss_grads,
                         const ScreenMesh& screen,
                         const BackwardOptions& options,
                         BackwardStats* stats) {
  if (loss_grads.size() != image.size()) {
    throw std::invalid_argument(
        "Backward: loss gradient has " + std::to_string(loss_grads.size()) +
        " entries, image has " + std::to_string(image.size()));
  }
  if (options.samples_per_axis < 1) {
    throw std::invalid_argument("Backward: samples_per_axis must be >= 1");
  }
  const BoundaryMask mask = DetectBoundaryPixels(image);
  const std::vector<DirectedEdge> edges = SilhouetteEdges(screen);
  const auto records = CollectEdgePixelPartials(screen, edges, mask, image.p0,
                                                image.p1, options);

  ScreenGradients grads(screen.vertices.size(), Vec2::Zero());
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    Vec2& ga = grads[edges[ei].a];
    Vec2& gb = grads[edges[ei].b];
    for (const EdgePixelRecord& rec : records[ei]) {
      const double g = loss_grads[rec.pixel];
      ga.x() += g * rec.partials.d_x0;
      ga.y() += g * rec.partials.d_y0;
      gb.x() += g * rec.partials.d_x1;
      gb.y() += g * rec.partials.d_y1;
    }
  }

  if (stats) {
    stats->edge_pixel_pairs = 0;
    stats->touched.assign(image.size(), 0);
    for (const auto& list : records) {
      stats->edge_pixel_pairs += list.size();
      for (const EdgePixelRecord& rec : list) stats->touched[rec.pixel] = 1;
    }
    stats->pixels_touched = static_cast<std::size_t>(
        std::count(stats->touched.begin(), stats->touched.end(), 1));
  }
  return grads;
}

std::vector<double> ParameterGradientImage(
    const ScreenMesh& screen, std::span<const Vec2> dvertex_dparam,
    int height, int width, const RenderSettings& settings, int threads) {
  if (dvertex_dparam.size() != screen.vertices.size()) {
    throw std::invalid_argument(
        "ParameterGradientImage: " + std::to_string(dvertex_dparam.size()) +
        " directions for " + std::to_string(screen.vertices.size()) +
        " vertices");
  }
  RasterOptions raster;
  raster.threads = threads;
  const SilhouetteImage image =
      Rasterize(screen, height, width, settings, raster);
  const BoundaryMask mask = DetectBoundaryPixels(image);
  const std::vector<DirectedEdge> edges = SilhouetteEdges(screen);
  BackwardOptions options;
  options.samples_per_axis = settings.samples_per_axis;
  options.threads = threads;
  const auto records = CollectEdgePixelPartials(screen, edges, mask,
                                                settings.p0, settings.p1,
                                                options);

  std::vector<double> out(image.size(), 0.0);
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const Vec2& da = dvertex_dparam[edges[ei].a];
    const Vec2& db = dvertex_dparam[edges[ei].b];
    for (const EdgePixelRecord& rec : records[ei]) {
      const EdgePixelPartials& p = rec.partials;
      out[rec.pixel] += p.d_x0 * da.x() + p.d_y0 * da.y() + p.d_x1 * db.x() +
                        p.d_y1 * db.y();
    }
  }
  return out;
}

}  // namespace silrender
