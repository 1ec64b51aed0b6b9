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

// Graph projection splitting for
//
//   minimize f(y) + g(x)  subject to  A x = y
//
// run in the scaled variables xt = E^{-1} x, yt = D y, where the constraint
// becomes yt = (DAE) xt. D = alpha Dhat and E = beta Ehat with (Dhat, Ehat)
// equilibrating A: alpha * beta sets ||DAE|| and beta / alpha acts as the
// step size. Changing beta / alpha with alpha * beta fixed leaves DAE, and
// hence the projection factorization, untouched.

#ifndef EQADMM_GRAPH_SPLITTING_H_
#define EQADMM_GRAPH_SPLITTING_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "Eigen/Cholesky"
#include "eqadmm/equilibration.h"
#include "eqadmm/matrix.h"
#include "eqadmm/problems.h"
#include "eqadmm/solver_types.h"

namespace eqadmm {

struct ScalingPlan {
  // (Dhat, Ehat).
  DiagonalScaling equilibration;
  // ||Dhat A Ehat||.
  double gamma = 1.0;
  double alpha = 1.0;
  double beta = 1.0;

  Vector D() const { return alpha * equilibration.d1; }
  Vector E() const { return beta * equilibration.d2; }
  // ||DAE|| = alpha * beta * gamma.
  double scaling() const { return alpha * beta * gamma; }
  double step() const { return beta / alpha; }

  // Same equilibration, with alpha * beta * gamma = scaled_norm and
  // beta / alpha = step.
  ScalingPlan WithParameters(double scaled_norm, double step) const;
};

// Equilibrates A with Ruiz (l_p), measures gamma, and sets
// alpha * beta = target_norm / gamma, beta / alpha = rho0.
ScalingPlan PlanScaling(const Matrix& a, NormOrder p = NormOrder(2.0),
                        double target_norm = 1.0, double rho0 = 1.0);

// Dhat = Ehat = I, gamma = ||A||. Zero A falls back to gamma = 1.
ScalingPlan UnequilibratedPlan(const Matrix& a, double target_norm = 1.0,
                               double rho0 = 1.0);

// Projection onto {(xt, yt) : M xt = yt} through the n x n system
// (I + M^T M) x' = xt + M^T yt, y' = M x'.
class ProjectionCache {
 public:
  explicit ProjectionCache(Matrix m);

  // Refactors only when `m` differs from the cached matrix.
  void Update(const Matrix& m);

  std::pair<Vector, Vector> Project(const Vector& xt, const Vector& yt) const;

  const Matrix& matrix() const { return m_; }
  int refactor_count() const { return refactor_count_; }

 private:
  void Factor();

  Matrix m_;
  Eigen::LLT<Matrix> factor_;
  int refactor_count_ = 0;
};

struct GraphState {
  // Prox outputs.
  Vector x_t;
  Vector y_t;
  // Projected copies, on the graph of DAE.
  Vector x_p;
  Vector y_p;
  // Scaled duals.
  Vector u_x;
  Vector u_y;
};

// Residual balancing. If r_primal > mu r_dual the effective penalty grows:
// alpha *= sqrt(tau), beta /= sqrt(tau) (beta / alpha shrinks by tau); if
// r_dual > mu r_primal the reverse. alpha * beta never changes.
ScalingPlan AdaptStep(const ScalingPlan& plan, double r_primal, double r_dual,
                      double mu, double tau);

// Re-expresses `state` (scaled with `from`) in the scaling of `to`, keeping
// the unscaled primal iterates and multipliers fixed. Requires equal
// alpha * beta.
void RescaleState(GraphState& state, const ScalingPlan& from, const ScalingPlan& to);

struct SolverConfig {
  // Relative tolerance on the scaled primal and dual residuals.
  double tol = 1e-4;
  // Absolute floor, scaled by sqrt(m + n).
  double abs_tol = 1e-9;
  int max_iter = 100000;
  bool adaptive = false;
  double mu = 10.0;
  double tau = 2.0;
  int max_adaptations = 50;
  // Record per-iteration objective and residuals.
  bool record_history = true;
  // Record unscaled x after every iteration.
  bool record_iterates = false;
};

struct SolveTrace {
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<double> objective;
  // Scaled residuals (where the stopping rule is applied).
  std::vector<double> primal_residual;
  std::vector<double> dual_residual;
  // The same residuals mapped back to the unscaled variables.
  std::vector<double> primal_residual_unscaled;
  std::vector<double> dual_residual_unscaled;
  std::vector<Vector> x_iterates;

  // Unscaled prox-step solution x = E xt, y = D^{-1} yt.
  Vector x;
  Vector y;
  // Unscaled projected pair; A x_projected = y_projected.
  Vector x_projected;
  Vector y_projected;
  // -E^{-1} u_x lies in dg(x) and -D u_y in df(y) at a fixed point.
  Vector dual_x;
  Vector dual_y;
  Vector dual_x_scaled;
  Vector dual_y_scaled;
  double final_objective = 0.0;
  int refactor_count = 0;
  int adaptations = 0;
  ScalingPlan final_plan;

  bool converged() const { return status == SolveStatus::kConverged; }
};

SolveTrace SolveGraphForm(const GraphFormProblem& problem, const ScalingPlan& plan,
                          const SolverConfig& config = {});

// Same, reusing (and possibly refactoring) an existing cache.
SolveTrace SolveGraphForm(const GraphFormProblem& problem, const ScalingPlan& plan,
                          const SolverConfig& config, ProjectionCache& cache);

// `steps` values log-spaced from lo to hi inclusive.
std::vector<double> LogSpace(double lo, double hi, int steps);

struct SweepGrid {
  // Values of ||DAE|| = alpha * beta * gamma.
  std::vector<double> scaling;
  // Values of beta / alpha.
  std::vector<double> step;
};

struct SweepCell {
  std::size_t scaling_index = 0;
  std::size_t step_index = 0;
  double scaling = 0.0;
  double step = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  double final_objective = 0.0;
  bool is_minimum = false;
};

struct SweepTable {
  // Row-major by (scaling_index, step_index), independent of completion
  // order.
  std::vector<SweepCell> cells;
  int min_iterations = 0;

  const SweepCell& at(std::size_t scaling_index, std::size_t step_index) const;
  std::size_t step_count = 0;
};

// Solves once per grid cell; failures record max_iter. Cells run on up to
// `threads` workers (0 = DefaultThreadCount()).
SweepTable Sweep(const GraphFormProblem& problem, const ScalingPlan& plan_base,
                 const SweepGrid& grid, const SolverConfig& config, int threads = 0);

}  // namespace eqadmm

#endif  // EQADMM_GRAPH_SPLITTING_H_
