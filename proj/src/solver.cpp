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

#include "sscsi/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sscsi/kernels.hpp"

namespace sscsi {

void SolverConfig::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be >= 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(alpha_min > 0.0) || !(alpha_max >= alpha_min))
    throw std::invalid_argument("step bounds must satisfy 0 < alpha_min <= alpha_max");
  if (power_iters < 1) throw std::invalid_argument("power_iters must be >= 1");
}

namespace {

double sum_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double split_objective(const LinearOperator& a, std::span<const double> g,
                       std::span<const double> z, double tau) {
  const auto n = static_cast<std::size_t>(a.cols());
  if (z.size() != 2 * n) throw DimensionMismatch("split vector must have 2 n entries");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = z[i] - z[n + i];
  std::vector<double> r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
  const auto& k = kernels::active();
  return 0.5 * k.dot(r.data(), r.data(), r.size()) + tau * sum_of(z);
}

std::vector<double> split_gradient(const LinearOperator& a, std::span<const double> g,
                                   std::span<const double> z, double tau) {
  const auto n = static_cast<std::size_t>(a.cols());
  if (z.size() != 2 * n) throw DimensionMismatch("split vector must have 2 n entries");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = z[i] - z[n + i];
  std::vector<double> r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
  const std::vector<double> c = a.adjoint(r);
  std::vector<double> grad(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    grad[i] = c[i] + tau;
    grad[n + i] = -c[i] + tau;
  }
  return grad;
}

SolveReport gpsr_solve(const LinearOperator& a, std::span<const double> g, const SolverConfig& cfg) {
  cfg.validate();
  if (static_cast<std::int64_t>(g.size()) != a.rows())
    throw DimensionMismatch("measurement length does not match the operator");
  const auto t0 = std::chrono::steady_clock::now();
  const auto& k = kernels::active();
  const auto n = static_cast<std::size_t>(a.cols());
  const auto m = static_cast<std::size_t>(a.rows());

  const double norm2 = estimate_squared_norm(a, cfg.power_iters);
  std::vector<double> z(2 * n, 0.0);
  {
    std::vector<double> pi0 = a.adjoint(g);
    const double scale = norm2 > 0.0 ? 1.0 / norm2 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = pi0[i] * scale;
      z[i] = v > 0.0 ? v : 0.0;
      z[n + i] = v < 0.0 ? -v : 0.0;
    }
  }

  std::vector<double> x(n), ax(m), resid(m), c(n), grad(2 * n), delta(2 * n), dx(n), adx(m);
  for (std::size_t i = 0; i < n; ++i) x[i] = z[i] - z[n + i];
  a.apply(x, ax);
  auto objective = [&]() {
    for (std::size_t i = 0; i < m; ++i) resid[i] = ax[i] - g[i];
    return 0.5 * k.dot(resid.data(), resid.data(), m) + cfg.tau * sum_of(z);
  };

  SolveReport report;
  const double f0 = objective();
  double alpha = cfg.step_rule == StepRule::kFixed && norm2 > 0.0 ? 1.0 / norm2 : 1.0;
  alpha = std::clamp(alpha, cfg.alpha_min, cfg.alpha_max);
  report.trace.push_back({0, f0, alpha});
  std::vector<double> best = z;
  double best_f = f0;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    // resid holds A x - g for the current iterate.
    a.apply_adjoint(resid, c);
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] = c[i] + cfg.tau;
      grad[n + i] = -c[i] + cfg.tau;
    }
    k.projected_step(z.data(), grad.data(), alpha, delta.data(), 2 * n);
    for (std::size_t i = 0; i < n; ++i) dx[i] = delta[i] - delta[n + i];
    a.apply(dx, adx);
    const double gamma = k.dot(adx.data(), adx.data(), m);
    const double dd = k.dot(delta.data(), delta.data(), 2 * n);
    if (dd == 0.0) {
      report.converged = true;
      report.iterations = it - 1;
      break;
    }
    double lambda = 1.0;
    if (cfg.monotone && gamma > 0.0) {
      const double slope = k.dot(delta.data(), grad.data(), 2 * n);
      lambda = std::clamp(-slope / gamma, 0.0, 1.0);
    }
    k.axpy(lambda, delta.data(), z.data(), 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const double both = std::min(z[i], z[n + i]);
      z[i] -= both;
      z[n + i] -= both;
    }
    k.axpy(lambda, adx.data(), ax.data(), m);
    const double f_new = objective();
    if (cfg.step_rule == StepRule::kBarzilaiBorwein)
      alpha = gamma > 0.0 ? std::clamp(dd / gamma, cfg.alpha_min, cfg.alpha_max) : cfg.alpha_max;
    report.trace.push_back({it, f_new, alpha});
    report.iterations = it;
    if (!std::isfinite(f_new)) {
      std::ostringstream os;
      os << "objective became non-finite at iteration " << it;
      throw SolverDiverged(os.str(), report.trace);
    }
    // decrease is measured against the best value so far; a nonmonotone
    // bounce back near an old value must not read as convergence
    bool small_step = lambda == 0.0;
    if (f_new <= best_f) {
      const double rel = (best_f - f_new) / std::max(std::abs(best_f), std::numeric_limits<double>::min());
      small_step = small_step || rel < cfg.tolerance;
      best_f = f_new;
      best = z;
    }
    if (small_step) {
      report.converged = true;
      break;
    }
  }

  report.coeffs.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.coeffs[i] = best[i] - best[n + i];
  report.objective = best_f;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void write_trace_csv(const std::string& path, const std::vector<TraceEntry>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  out << "iteration,objective,step\n";
  for (const auto& e : trace) out << e.iteration << ',' << e.objective << ',' << e.step << '\n';
}

}  // namespace sscsi
