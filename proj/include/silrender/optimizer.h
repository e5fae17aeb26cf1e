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

// Adam and the silhouette fitting loop.

#ifndef SILRENDER_OPTIMIZER_H_
#define SILRENDER_OPTIMIZER_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "silrender/articulated_model.h"
#include "silrender/loss.h"

namespace silrender {

struct AdamOptions {
  double alpha = 1.5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  void Validate() const;
};

class AdamState {
 public:
  AdamState(std::size_t size, const AdamOptions& options);

  // One bias-corrected update. Throws std::invalid_argument on a length
  // mismatch or a non-finite gradient (naming the coordinate); params and
  // state are left untouched in that case.
  void Step(std::span<double> params, std::span<const double> grads);

  int t() const { return t_; }
  const std::vector<double>& m() const { return m_; }
  const std::vector<double>& v() const { return v_; }

 private:
  AdamOptions options_;
  int t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

struct TraceEntry {
  int iteration = 0;
  double e = 0.0;
  double e_sl = 0.0;
  double e_p = 0.0;  // NaN without ground truth
  double wall_ms = 0.0;
  std::vector<double> params;
};

struct FitProblem {
  std::function<PosedMesh(std::span<const double>)> model;
  MultiViewTargets targets;
  Objective objective;
  RenderSettings render;
  std::vector<Vec3> truth_vertices;  // optional, enables E_p
  std::vector<bool> free;            // empty means every parameter is free
};

struct FitOptions {
  int iterations = 100;
  AdamOptions adam;
  int threads = 1;
  bool record_timing = true;  // false writes wall_ms = 0
  // Called after each trace entry; returning false stops the fit.
  std::function<bool(const TraceEntry&)> on_iteration;
};

struct FitResult {
  std::vector<TraceEntry> trace;
  std::vector<double> params;
  bool aborted = false;
  std::string abort_reason;
};

// Entry i of the trace holds the state after i steps, so a complete run has
// iterations + 1 entries. A non-finite loss or gradient aborts the run and
// keeps the trace so far.
FitResult Fit(const FitProblem& problem, std::vector<double> init,
              const FitOptions& options);

// iteration,E,E_sl,E_p,wall_ms with 6 significant digits.
std::string FormatTraceCsv(std::span<const TraceEntry> trace);

}  // namespace silrender

#endif  // SILRENDER_OPTIMIZER_H_
