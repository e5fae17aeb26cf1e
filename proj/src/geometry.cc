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

#include "silrender/geometry.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "silrender/io.h"

namespace silrender {

void TriangleMesh::Validate() const {
  if (vertices.size() < 3) {
    throw std::invalid_argument("mesh needs at least 3 vertices");
  }
  if (faces.empty()) throw std::invalid_argument("mesh has no faces");
  const int n = static_cast<int>(vertices.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const Face& face = faces[f];
    for (int idx : face) {
      if (idx < 0 || idx >= n) {
        throw std::invalid_argument("face " + std::to_string(f) +
                                    " references vertex " +
                                    std::to_string(idx) + " of " +
                                    std::to_string(n));
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw std::invalid_argument("face " + std::to_string(f) +
                                  " repeats a vertex index");
    }
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vertices[v].allFinite()) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " is not finite");
    }
  }
}

double SignedArea(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) -
                (b.y() - a.y()) * (c.x() - a.x()));
}

Rect FaceBoundingBox(const Vec2& a, const Vec2& b, const Vec2& c) {
  return Rect{std::min({a.x(), b.x(), c.x()}), std::min({a.y(), b.y(), c.y()}),
              std::max({a.x(), b.x(), c.x()}), std::max({a.y(), b.y(), c.y()})};
}

namespace {

double ParseDouble(std::string_view token, int line) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ObjParseError(line, "bad number '" + std::string(token) + "'");
  }
  return value;
}

int ParseIndex(std::string_view token, int line, int vertex_count) {
  token = token.substr(0, token.find('/'));
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    throw ObjParseError(line, "bad face index '" + std::string(token) + "'");
  }
  // Negative indices count back from the most recent vertex.
  const int zero_based = value > 0 ? value - 1 : vertex_count + value;
  if (zero_based < 0 || zero_based >= vertex_count) {
    throw ObjParseError(line, "face index " + std::to_string(value) +
                                  " out of range (" +
                                  std::to_string(vertex_count) + " vertices)");
  }
  return zero_based;
}

}  // namespace

TriangleMesh ParseObj(std::istream& in) {
  TriangleMesh mesh;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ls(raw);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::string x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw ObjParseError(line, "vertex needs 3 coordinates");
      }
      mesh.vertices.emplace_back(ParseDouble(x, line), ParseDouble(y, line),
                                 ParseDouble(z, line));
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string tok;
      const int n = static_cast<int>(mesh.vertices.size());
      while (ls >> tok) poly.push_back(ParseIndex(tok, line, n));
      if (poly.size() < 3) {
        throw ObjParseError(line, "face needs at least 3 vertices");
      }
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const Face face{poly[0], poly[k], poly[k + 1]};
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
          throw ObjParseError(line, "face repeats a vertex index");
        }
        mesh.faces.push_back(face);
      }
    }
  }
  try {
    mesh.Validate();
  } catch (const std::invalid_argument& e) {
    throw ObjParseError(line, e.what());
  }
  return mesh;
}

TriangleMesh LoadObj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ParseObj(in);
}

std::string FormatObj(const TriangleMesh& mesh) {
  std::string out;
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x(), v.y(),
                  v.z());
    out += buf;
  }
  for (const Face& f : mesh.faces) {
    std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1,
                  f[2] + 1);
    out += buf;
  }
  return out;
}

void SaveObj(const TriangleMesh& mesh, const std::filesystem::path& path) {
  WriteFileAtomic(path, FormatObj(mesh));
}

}  // namespace silrender
