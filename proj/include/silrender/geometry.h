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

#ifndef SILRENDER_GEOMETRY_H_
#define SILRENDER_GEOMETRY_H_

#include <array>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace silrender {

// Screen space: x to the right, y downward, origin at the top-left corner of
// the image. Pixel (row i, column j) covers [j, j+1] x [i, i+1].
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Vertex indices of one triangle.
using Face = std::array<int, 3>;

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;

  // Throws std::invalid_argument when an index is out of range, a face repeats
  // a vertex, or the mesh has fewer than 3 vertices / 1 face.
  void Validate() const;
};

// A mesh after projection. Faces are wound so that a front-facing triangle has
// positive SignedArea().
struct ScreenMesh {
  std::vector<Vec2> vertices;
  std::vector<Face> faces;
  std::vector<double> depths;
};

struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double Width() const { return x_max - x_min; }
  double Height() const { return y_max - y_min; }
  double Area() const { return Width() * Height(); }
  bool Empty() const { return !(x_min < x_max && y_min < y_max); }

  // The unit square of pixel (row, col).
  static Rect Pixel(int row, int col) {
    return Rect{static_cast<double>(col), static_cast<double>(row),
                static_cast<double>(col) + 1.0, static_cast<double>(row) + 1.0};
  }
};

class ObjParseError : public std::runtime_error {
 public:
  ObjParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Half the cross product (b - a) x (c - a). Positive means the triangle
// interior lies on the negative side of the edge function of every directed
// edge a->b, b->c, c->a.
double SignedArea(const Vec2& a, const Vec2& b, const Vec2& c);

Rect FaceBoundingBox(const Vec2& a, const Vec2& b, const Vec2& c);

// Reads "v" and "f" records; every other record type is ignored. Polygons are
// fan-triangulated, indices are converted to 0-based and "f a/b/c" style
// references keep only the position index.
TriangleMesh ParseObj(std::istream& in);
TriangleMesh LoadObj(const std::filesystem::path& path);

std::string FormatObj(const TriangleMesh& mesh);
void SaveObj(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace silrender

#endif  // SILRENDER_GEOMETRY_H_
