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

#include "silrender/clip.h"

#include <algorithm>
#include <cmath>

namespace silrender {

std::optional<Segment> LiangBarskyClip(const Segment& seg, const Rect& rect) {
  const double dx = seg.b.x() - seg.a.x();
  const double dy = seg.b.y() - seg.a.y();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {seg.a.x() - rect.x_min, rect.x_max - seg.a.x(),
                       seg.a.y() - rect.y_min, rect.y_max - seg.a.y()};
  double t0 = 0.0;
  double t1 = 1.0;
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;  // parallel and outside
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return std::nullopt;
  }
  if (!(t0 < t1)) return std::nullopt;

  Segment out;
  out.a = t0 == 0.0 ? seg.a : Vec2(seg.a.x() + t0 * dx, seg.a.y() + t0 * dy);
  out.b = t1 == 1.0 ? seg.b : Vec2(seg.a.x() + t1 * dx, seg.a.y() + t1 * dy);
  // Snap onto the boundary that produced the parameter; the parametric point
  // can land one ulp outside.
  auto clamp = [&rect](Vec2& v) {
    v.x() = std::clamp(v.x(), rect.x_min, rect.x_max);
    v.y() = std::clamp(v.y(), rect.y_min, rect.y_max);
  };
  clamp(out.a);
  clamp(out.b);
  if (out.a == out.b) return std::nullopt;
  return out;
}

namespace {

// One Sutherland-Hodgman pass against the half-plane sign * (coord - bound)
// >= 0 on axis `axis` (0 = x, 1 = y).
Polygon ClipAgainst(const Polygon& in, int axis, double bound, double sign) {
  Polygon out;
  if (in.empty()) return out;
  out.reserve(in.size() + 2);
  auto inside = [&](const Vec2& v) { return sign * (v[axis] - bound) >= 0.0; };
  auto intersect = [&](const Vec2& s, const Vec2& e) {
    const double t = (bound - s[axis]) / (e[axis] - s[axis]);
    Vec2 r = s + t * (e - s);
    r[axis] = bound;
    return r;
  };
  Vec2 prev = in.back();
  bool prev_in = inside(prev);
  for (const Vec2& cur : in) {
    const bool cur_in = inside(cur);
    if (cur_in) {
      if (!prev_in) out.push_back(intersect(prev, cur));
      out.push_back(cur);
    } else if (prev_in) {
      out.push_back(intersect(prev, cur));
    }
    prev = cur;
    prev_in = cur_in;
  }
  return out;
}

}  // namespace

Polygon ClipPolygonToRect(std::span<const Vec2> polygon, const Rect& rect) {
  Polygon p(polygon.begin(), polygon.end());
  p = ClipAgainst(p, 0, rect.x_min, 1.0);
  p = ClipAgainst(p, 0, rect.x_max, -1.0);
  p = ClipAgainst(p, 1, rect.y_min, 1.0);
  p = ClipAgainst(p, 1, rect.y_max, -1.0);
  if (p.size() < 3) p.clear();
  return p;
}

double PolygonArea(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  // Relative to the first vertex to limit cancellation far from the origin.
  const Vec2 origin = polygon[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 a = polygon[i] - origin;
    const Vec2 b = polygon[i + 1] - origin;
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * std::abs(twice);
}

}  // namespace silrender
