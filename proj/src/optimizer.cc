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

#include "silrender/optimizer.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace silrender {

void AdamOptions::Validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("adam alpha must be positive");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0)) {
    throw std::invalid_argument("adam beta1 must be in [0, 1)");
  }
  if (!(beta2 >= 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("adam beta2 must be in [0, 1)");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("adam eps must be positive");
}

AdamState::AdamState(std::size_t size, const AdamOptions& options)
    : options_(options), m_(size, 0.0), v_(size, 0.0) {
  options_.Validate();
}

void AdamState::Step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::invalid_argument(
        "adam: state has " + std::to_string(m_.size()) + " entries, got " +
        std::to_string(params.size()) + " params and " +
        std::to_string(grads.size()) + " gradients");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw std::invalid_argument("adam: gradient " + std::to_string(i) +
                                  " is not finite");
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(options_.beta1, t_);
  const double c2 = 1.0 - std::pow(options_.beta2, t_);
  for (std::size_t i = 0; i < grads.size(); ++i) {
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * grads[i];
    v_[i] = options_.beta2 * v_[i] + (1.0 - options_.beta2) * grads[i] * grads[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= options_.alpha * m_hat / (std::sqrt(v_hat) + options_.eps);
  }
}

FitResult Fit(const FitProblem& problem, std::vector<double> init,
              const FitOptions& options) {
  if (options.iterations < 1) {
    throw std::invalid_argument("fit: iterations must be >= 1");
  }
  if (!problem.model) throw std::invalid_argument("fit: no model");
  if (!problem.free.empty() && problem.free.size() != init.size()) {
    throw std::invalid_argument("fit: free mask has " +
                                std::to_string(problem.free.size()) +
                                " entries for " + std::to_string(init.size()) +
                                " parameters");
  }
  FitResult result;
  result.params = std::move(init);
  AdamState adam(result.params.size(), options.adam);
  std::vector<double> param_grads(result.params.size());

  for (int it = 0; it <= options.iterations; ++it) {
    const auto start = std::chrono::steady_clock::now();
    const PosedMesh posed = problem.model(result.params);
    const ObjectiveValue obj =
        EvaluateObjective(posed.mesh, problem.targets, problem.objective,
                          problem.render, options.threads);

    TraceEntry entry;
    entry.iteration = it;
    entry.e = obj.e;
    entry.e_sl = obj.e_sl;
    entry.e_p = problem.truth_vertices.empty()
                    ? std::numeric_limits<double>::quiet_NaN()
                    : PerVertexError(posed.mesh.vertices, problem.truth_vertices);
    entry.params = result.params;
    if (!std::isfinite(obj.e)) {
      result.trace.push_back(std::move(entry));
      result.aborted = true;
      result.abort_reason = "non-finite loss at iteration " + std::to_string(it);
      return result;
    }

    bool stop = it == options.iterations;
    if (!stop) {
      // Parameter gradient: J^T times the stacked vertex gradients.
      const Eigen::Map<const Eigen::VectorXd> g(obj.grads.data()->data(),
                                                3 * obj.grads.size());
      const Eigen::VectorXd pg = posed.jacobian.transpose() * g;
      for (std::size_t i = 0; i < param_grads.size(); ++i) {
        param_grads[i] =
            problem.free.empty() || problem.free[i] ? pg[static_cast<Eigen::Index>(i)] : 0.0;
      }
      try {
        adam.Step(result.params, param_grads);
      } catch (const std::invalid_argument& e) {
        result.aborted = true;
        result.abort_reason =
            std::string(e.what()) + " at iteration " + std::to_string(it);
        stop = true;
      }
    }
    if (options.record_timing) {
      entry.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    }
    const bool keep_going =
        !options.on_iteration || options.on_iteration(entry);
    result.trace.push_back(std::move(entry));
    if (stop || !keep_going) break;
  }
  return result;
}

std::string FormatTraceCsv(std::span<const TraceEntry> trace) {
  std::string out = "iteration,E,E_sl,E_p,wall_ms\n";
  char line[160];
  for (const TraceEntry& e : trace) {
    std::snprintf(line, sizeof(line), "%d,%.6g,%.6g,%.6g,%.6g\n", e.iteration,
                  e.e, e.e_sl, e.e_p, e.wall_ms);
    out += line;
  }
  return out;
}

}  // namespace silrender
