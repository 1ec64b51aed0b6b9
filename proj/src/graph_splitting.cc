// Copyright 2026 The eqadmm Authors
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

#include "eqadmm/graph_splitting.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "eqadmm/errors.h"
#include "eqadmm/metrics.h"
#include "eqadmm/parallel.h"

namespace eqadmm {
namespace {

void CheckPositive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " must be positive");
  }
}

double Norm2(const Vector& a, const Vector& b) {
  return std::sqrt(a.squaredNorm() + b.squaredNorm());
}

}  // namespace

ScalingPlan ScalingPlan::WithParameters(double scaled_norm, double step) const {
  CheckPositive(scaled_norm, "target norm");
  CheckPositive(step, "step");
  ScalingPlan out = *this;
  const double product = scaled_norm / gamma;
  out.alpha = std::sqrt(product / step);
  out.beta = std::sqrt(product * step);
  return out;
}

ScalingPlan PlanScaling(const Matrix& a, NormOrder p, double target_norm, double rho0) {
  EquilibrationOptions options;
  options.p = p;
  options.compute_condition = false;
  ScalingPlan plan;
  plan.equilibration = Ruiz(a, options).scaling;
  plan.gamma = SpectralNorm(plan.equilibration.Apply(a));
  return plan.WithParameters(target_norm, rho0);
}

ScalingPlan UnequilibratedPlan(const Matrix& a, double target_norm, double rho0) {
  CheckMatrix(a);
  ScalingPlan plan;
  plan.equilibration = DiagonalScaling::Identity(a.rows(), a.cols());
  plan.gamma = (a.array() == 0.0).all() ? 1.0 : SpectralNorm(a);
  return plan.WithParameters(target_norm, rho0);
}

ProjectionCache::ProjectionCache(Matrix m) : m_(std::move(m)) {
  CheckMatrix(m_, "graph matrix");
  Factor();
}

void ProjectionCache::Update(const Matrix& m) {
  if (m.rows() == m_.rows() && m.cols() == m_.cols() && m == m_) return;
  CheckMatrix(m, "graph matrix");
  m_ = m;
  Factor();
}

void ProjectionCache::Factor() {
  Matrix system = m_.transpose() * m_;
  system.diagonal().array() += 1.0;
  factor_.compute(system);
  if (factor_.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "I + M^T M factorization failed");
  }
  ++refactor_count_;
}

std::pair<Vector, Vector> ProjectionCache::Project(const Vector& xt,
                                                   const Vector& yt) const {
  if (xt.size() != m_.cols() || yt.size() != m_.rows()) {
    throw Error(ErrorKind::kInvalidInput, "projection input has wrong dimensions");
  }
  Vector x = factor_.solve(xt + m_.transpose() * yt);
  Vector y = m_ * x;
  return {std::move(x), std::move(y)};
}

ScalingPlan AdaptStep(const ScalingPlan& plan, double r_primal, double r_dual,
                      double mu, double tau) {
  if (!(mu > 1.0) || !(tau > 1.0)) {
    throw Error(ErrorKind::kInvalidInput, "adaptation needs mu > 1 and tau > 1");
  }
  ScalingPlan out = plan;
  const double root = std::sqrt(tau);
  if (r_primal > mu * r_dual) {
    out.alpha *= root;
    out.beta /= root;
  } else if (r_dual > mu * r_primal) {
    out.alpha /= root;
    out.beta *= root;
  }
  return out;
}

void RescaleState(GraphState& state, const ScalingPlan& from, const ScalingPlan& to) {
  // xt = x / (beta Ehat), yt = alpha Dhat y; multipliers E^{-1} u_x and
  // D u_y are invariant.
  const double x_factor = from.beta / to.beta;
  const double y_factor = to.alpha / from.alpha;
  state.x_t *= x_factor;
  state.x_p *= x_factor;
  state.u_x /= x_factor;
  state.y_t *= y_factor;
  state.y_p *= y_factor;
  state.u_y /= y_factor;
}

SolveTrace SolveGraphForm(const GraphFormProblem& problem, const ScalingPlan& plan,
                          const SolverConfig& config) {
  ProjectionCache cache(plan.equilibration.Apply(problem.a) * (plan.alpha * plan.beta));
  return SolveGraphForm(problem, plan, config, cache);
}

SolveTrace SolveGraphForm(const GraphFormProblem& problem, const ScalingPlan& plan_in,
                          const SolverConfig& config, ProjectionCache& cache) {
  problem.Validate();
  plan_in.equilibration.Validate();
  if (plan_in.equilibration.d1.size() != problem.rows() ||
      plan_in.equilibration.d2.size() != problem.cols()) {
    throw Error(ErrorKind::kInvalidInput, "scaling plan does not match the problem");
  }
  CheckPositive(plan_in.alpha, "alpha");
  CheckPositive(plan_in.beta, "beta");
  if (!(config.tol >= 0.0)) throw Error(ErrorKind::kInvalidInput, "tolerance must be nonnegative");

  ScalingPlan plan = plan_in;
  cache.Update(plan.equilibration.Apply(problem.a) * (plan.alpha * plan.beta));

  const Eigen::Index m = problem.rows();
  const Eigen::Index n = problem.cols();
  const double floor = std::sqrt(static_cast<double>(m + n)) * config.abs_tol;

  GraphState state{Vector::Zero(n), Vector::Zero(m), Vector::Zero(n),
                   Vector::Zero(m), Vector::Zero(n), Vector::Zero(m)};
  SolveTrace trace;
  Vector e = plan.E();
  Vector d = plan.D();
  Vector d_inv = d.cwiseInverse();

  for (int k = 0; k < config.max_iter; ++k) {
    // Prox step on g(E xt) and f(D^{-1} yt).
    state.x_t = problem.g.ScaledProx(e, state.x_p - state.u_x);
    state.y_t = problem.f.ScaledProx(d_inv, state.y_p - state.u_y);

    const Vector x_prev = state.x_p;
    const Vector y_prev = state.y_p;
    std::tie(state.x_p, state.y_p) =
        cache.Project(state.x_t + state.u_x, state.y_t + state.u_y);

    const Vector gap_x = state.x_t - state.x_p;
    const Vector gap_y = state.y_t - state.y_p;
    state.u_x += gap_x;
    state.u_y += gap_y;

    const double primal = Norm2(gap_x, gap_y);
    const Vector move_x = state.x_p - x_prev;
    const Vector move_y = state.y_p - y_prev;
    const double dual = Norm2(move_x, move_y);
    trace.iterations = k + 1;

    if (config.record_history) {
      trace.primal_residual.push_back(primal);
      trace.dual_residual.push_back(dual);
      trace.primal_residual_unscaled.push_back(
          Norm2(e.cwiseProduct(gap_x), d_inv.cwiseProduct(gap_y)));
      trace.dual_residual_unscaled.push_back(
          Norm2(move_x.cwiseQuotient(e), d.cwiseProduct(move_y)));
      trace.objective.push_back(problem.Objective(e.cwiseProduct(state.x_t),
                                                  d_inv.cwiseProduct(state.y_t)));
    }
    if (config.record_iterates) trace.x_iterates.push_back(e.cwiseProduct(state.x_t));

    const double eps_primal =
        floor + config.tol * std::max(Norm2(state.x_t, state.y_t), Norm2(state.x_p, state.y_p));
    const double eps_dual = floor + config.tol * Norm2(state.u_x, state.u_y);
    if (primal <= eps_primal && dual <= eps_dual) {
      trace.status = SolveStatus::kConverged;
      break;
    }

    if (config.adaptive && trace.adaptations < config.max_adaptations) {
      const ScalingPlan next = AdaptStep(plan, primal, dual, config.mu, config.tau);
      if (next.alpha != plan.alpha) {
        RescaleState(state, plan, next);
        plan = next;
        e = plan.E();
        d = plan.D();
        d_inv = d.cwiseInverse();
        ++trace.adaptations;
      }
    }
  }

  trace.x = e.cwiseProduct(state.x_t);
  trace.y = d_inv.cwiseProduct(state.y_t);
  trace.x_projected = e.cwiseProduct(state.x_p);
  trace.y_projected = d_inv.cwiseProduct(state.y_p);
  trace.dual_x_scaled = state.u_x;
  trace.dual_y_scaled = state.u_y;
  trace.dual_x = -state.u_x.cwiseQuotient(e);
  trace.dual_y = -d.cwiseProduct(state.u_y);
  trace.final_objective = problem.Objective(trace.x, trace.y);
  trace.refactor_count = cache.refactor_count();
  trace.final_plan = plan;
  return trace;
}

std::vector<double> LogSpace(double lo, double hi, int steps) {
  CheckPositive(lo, "grid lower bound");
  CheckPositive(hi, "grid upper bound");
  if (steps < 1) throw Error(ErrorKind::kInvalidInput, "grid needs at least one step");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < steps; ++i) {
    out[i] = std::exp(a + (b - a) * i / (steps - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

const SweepCell& SweepTable::at(std::size_t scaling_index, std::size_t step_index) const {
  return cells.at(scaling_index * step_count + step_index);
}

SweepTable Sweep(const GraphFormProblem& problem, const ScalingPlan& plan_base,
                 const SweepGrid& grid, const SolverConfig& config, int threads) {
  if (grid.scaling.empty() || grid.step.empty()) {
    throw Error(ErrorKind::kInvalidInput, "sweep grid is empty");
  }
  SweepTable table;
  table.step_count = grid.step.size();
  table.cells.resize(grid.scaling.size() * grid.step.size());
  SolverConfig cell_config = config;
  cell_config.record_history = false;
  cell_config.record_iterates = false;
  ParallelFor(table.cells.size(), threads, [&](std::size_t index) {
    SweepCell& cell = table.cells[index];
    cell.scaling_index = index / table.step_count;
    cell.step_index = index % table.step_count;
    cell.scaling = grid.scaling[cell.scaling_index];
    cell.step = grid.step[cell.step_index];
    const ScalingPlan plan = plan_base.WithParameters(cell.scaling, cell.step);
    const SolveTrace trace = SolveGraphForm(problem, plan, cell_config);
    cell.status = trace.status;
    cell.iterations = trace.converged() ? trace.iterations : config.max_iter;
    cell.final_objective = trace.final_objective;
  });
  table.min_iterations = std::numeric_limits<int>::max();
  for (const SweepCell& cell : table.cells) {
    table.min_iterations = std::min(table.min_iterations, cell.iterations);
  }
  for (SweepCell& cell : table.cells) {
    cell.is_minimum = cell.iterations == table.min_iterations;
  }
  return table;
}

}  // namespace eqadmm
