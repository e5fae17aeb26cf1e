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

// Shared generators for the test suites.

#ifndef SILRENDER_TESTS_TEST_UTIL_H_
#define SILRENDER_TESTS_TEST_UTIL_H_

#include <random>

#include "silrender/clip.h"
#include "silrender/geometry.h"
#include "silrender/oracle.h"

namespace silrender::testing {

using oracle::EdgePixelCase;
using oracle::RandomEdgePixelCase;
using oracle::RandomPoint;
using oracle::RandomTriangle;

inline ScreenMesh SingleTriangleMesh(const oracle::Triangle& t) {
  ScreenMesh mesh;
  mesh.vertices = {t[0], t[1], t[2]};
  mesh.faces = {Face{0, 1, 2}};
  mesh.depths = {1.0, 1.0, 1.0};
  return mesh;
}

}  // namespace silrender::testing

#endif  // SILRENDER_TESTS_TEST_UTIL_H_
