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


// Finite-difference checks of the analytic derivatives against the oracles.
// Shared by the gradcheck command and the acceptance suite.

#ifndef SILRENDER_GRADCHECK_H_
#define SILRENDER_GRADCHECK_H_

#include <cstdint>
#include <string>
#include <vector>

namespace silrender::oracle {

struct CheckResult {
  std::string name;
  int cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;

  bool passed() const { return max_error <= tolerance; }
};

// Closed-form edge/pixel partials against central differences of the exact
// coverage, on `cases` random edges crossing a pixel with both endpoints
// outside it. Relative error, floor 1e-3 (absolute 1e-9 near zero).
CheckResult CheckEdgePartials(std::uint64_t seed, int cases = 1000);

// The two axis-aligned unit-pixel examples: absolute error against
// (0.5, 0, 0.5, 0) and (0, -0.5, 0, -0.5).
CheckResult CheckWorkedExamples();

// dL/d(screen vertex) from Backward() for L = sum of squared exact coverage
// of one random triangle, against central differences of L.
CheckResult CheckTriangleLoss(std::uint64_t seed, int trials = 100,
                              int size = 24);

// Perspective projection Jacobians against central differences.
CheckResult CheckProjectionJacobians(std::uint64_t seed, int trials = 50);

// Skinned humanoid and rigid-transform Jacobians against central differences.
CheckResult CheckModelJacobians(std::uint64_t seed, int trials = 5);

// All of the above with the default sizes.
std::vector<CheckResult> RunGradientChecks(std::uint64_t seed);

}  // namespace silrender::oracle

#endif  // SILRENDER_GRADCHECK_H_
