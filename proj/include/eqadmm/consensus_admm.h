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

// ADMM for the consensus problem
//
//   minimize (1/2)||Ax - b||^2 + g(z)  subject to  F x = F z
//
// with a positive diagonal F. F = sqrt(rho) I is textbook ADMM with step
// rho; a general diagonal F changes the norm that augments the Lagrangian.

#ifndef EQADMM_CONSENSUS_ADMM_H_
#define EQADMM_CONSENSUS_ADMM_H_

#include <utility>
#include <vector>

#include "eqadmm/matrix.h"
#include "eqadmm/problems.h"
#include "eqadmm/solver_types.h"

namespace eqadmm {

struct ConsensusProblem {
  Matrix a;
  Vector b;
  SeparableFunction g;
  // Diagonal of F.
  Vector preconditioner;

  void Validate() const;
};

struct ConsensusOptions {
  // Relative tolerance on both residuals.
  double tol = 1e-4;
  // Absolute floor, scaled by sqrt(n).
  double abs_tol = 1e-9;
  int max_iter = 100000;
  // Keep every x and z iterate (for equivalence tests).
  bool record_iterates = false;
};

struct ConsensusTrace {
  int iterations = 0;
  SolveStatus status = SolveStatus::kMaxIterations;
  // (1/2)||A z - b||^2 + g(z) after each iteration.
  std::vector<double> objective_history;
  // (||F(x - z)||, ||F^2 (z - z_prev)||) after each iteration.
  std::vector<std::pair<double, double>> residual_history;
  // The z iterate at exit: it is where g was minimized, so it is sparse for
  // l1 and feasible for indicators.
  Vector x_final;
  Vector x_last;
  // Multiplier of F x = F z; F * y_final is the multiplier of x = z.
  Vector y_final;
  std::vector<Vector> x_iterates;
  std::vector<Vector> z_iterates;

  bool converged() const { return status == SolveStatus::kConverged; }
};

// x-update: (A^T A + F^2) x = A^T b + F^2 z - F y (one cached Cholesky);
// z-update: prox of g weighted by F^2 at x + F^{-1} y;
// dual: y += F (x - z). Starts from x = z = y = 0.
ConsensusTrace SolveConsensus(const ConsensusProblem& problem,
                              const ConsensusOptions& options = {});

// sqrt(sigma_min(A) sigma_max(A)). Throws kInvalidInput for rank-deficient A.
double OptimalScalarRho(const Matrix& a);

// Diagonal F making the rows of F (A^T A)^{-1} F share one l2 norm, by
// symmetric Ruiz on the explicit inverse Gram matrix.
Vector EquilibrateGramInverse(const Matrix& a, double eps = 1e-6, int max_iter = 100);

// kappa(F (A^T A)^{-1} F), evaluated as kappa(A F^{-1})^2.
double ConvergenceRateBound(const Matrix& a, const Vector& preconditioner);

}  // namespace eqadmm

#endif  // EQADMM_CONSENSUS_ADMM_H_
