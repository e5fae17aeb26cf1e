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

#ifndef SILRENDER_CLIP_H_
#define SILRENDER_CLIP_H_

#include <optional>
#include <span>
#include <vector>

#include "silrender/geometry.h"

namespace silrender {

struct Segment {
  Vec2 a;
  Vec2 b;
};

using Polygon = std::vector<Vec2>;

// Liang-Barsky clip of segment a->b against `rect`. The result keeps the a->b
// direction. Returns nullopt when the intersection is empty or a single point.
std::optional<Segment> LiangBarskyClip(const Segment& seg, const Rect& rect);

// Sutherland-Hodgman clip of a polygon against an axis-aligned rectangle.
// Returns an empty polygon when nothing remains.
Polygon ClipPolygonToRect(std::span<const Vec2> polygon, const Rect& rect);

// Absolute shoelace area; 0 for fewer than three vertices.
double PolygonArea(std::span<const Vec2> polygon);

}  // namespace silrender

#endif  // SILRENDER_CLIP_H_
