// Copyright 2026 the sscsi authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "sscsi/errors.hpp"
#include "sscsi/linear_operator.hpp"

namespace sscsi {

enum class StepRule {
  kBarzilaiBorwein,  ///< alpha = |delta|^2 / |A delta|^2
  kFixed,            ///< alpha = 1 / |A|^2 from the power-method estimate
};

struct SolverConfig {
  double tau = 5e-5;
  int max_iters = 2000;
  double tolerance = 1e-6;  ///< on the relative decrease of the best objective so far
  StepRule step_rule = StepRule::kBarzilaiBorwein;
  /// Exact line search along each projected step, which makes the objective
  /// nonincreasing. Off means full steps (plain BB).
  bool monotone = true;
  double alpha_min = 1e-30;
  double alpha_max = 1e30;
  int power_iters = 20;

  void validate() const;
};

struct TraceEntry {
  int iteration = 0;
  double objective = 0.0;
  double step = 0.0;  ///< alpha used to form the projected direction
};

struct SolveReport {
  std::vector<double> coeffs;
  std::vector<TraceEntry> trace;
  int iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;
  double objective = 0.0;
};

class SolverDiverged : public NumericalFailure {
 public:
  SolverDiverged(const std::string& what, std::vector<TraceEntry> trace)
      : NumericalFailure(what), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// Minimizes 1/2 |g - A pi|^2 + tau |pi|_1 by gradient projection on the
/// split pi = u - v, u, v >= 0 (GPSR-BB). Returns the best iterate.
SolveReport gpsr_solve(const LinearOperator& a, std::span<const double> g, const SolverConfig& cfg);

/// Split objective F(u, v) with z = [u; v].
double split_objective(const LinearOperator& a, std::span<const double> g,
                       std::span<const double> z, double tau);
/// Gradient of F with respect to z.
std::vector<double> split_gradient(const LinearOperator& a, std::span<const double> g,
                                   std::span<const double> z, double tau);

/// "iteration,objective,step" rows.
void write_trace_csv(const std::string& path, const std::vector<TraceEntry>& trace);

}  // namespace sscsi
