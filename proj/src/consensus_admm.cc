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

#include "eqadmm/consensus_admm.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Cholesky"
#include "eqadmm/equilibration.h"
#include "eqadmm/errors.h"
#include "eqadmm/metrics.h"

namespace eqadmm {

void ConsensusProblem::Validate() const {
  CheckMatrix(a);
  if (b.size() != a.rows() || g.size() != a.cols() ||
      preconditioner.size() != a.cols()) {
    throw Error(ErrorKind::kInvalidInput, "consensus problem dimensions disagree");
  }
  if (!preconditioner.allFinite() || preconditioner.minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "preconditioner entries must be positive");
  }
}

ConsensusTrace SolveConsensus(const ConsensusProblem& problem,
                              const ConsensusOptions& options) {
  problem.Validate();
  const Eigen::Index n = problem.a.cols();
  const Vector& f = problem.preconditioner;
  const Vector f2 = f.cwiseAbs2();

  const Matrix gram = problem.a.transpose() * problem.a;
  const Vector atb = problem.a.transpose() * problem.b;
  const double half_b2 = 0.5 * problem.b.squaredNorm();
  Matrix system = gram;
  system.diagonal() += f2;
  const Eigen::LLT<Matrix> factor(system);
  if (factor.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "A^T A + F^2 is not positive definite");
  }

  const double floor = std::sqrt(static_cast<double>(n)) * options.abs_tol;
  ConsensusTrace trace;
  Vector x = Vector::Zero(n);
  Vector z = Vector::Zero(n);
  Vector y = Vector::Zero(n);
  for (int k = 0; k < options.max_iter; ++k) {
    x = factor.solve(atb + f2.cwiseProduct(z) - f.cwiseProduct(y));
    const Vector z_prev = z;
    z = problem.g.WeightedProx(f2, x + y.cwiseQuotient(f));
    y += f.cwiseProduct(x - z);

    const double primal = f.cwiseProduct(x - z).norm();
    const double dual = f2.cwiseProduct(z - z_prev).norm();
    // (1/2)||Az - b||^2 through the cached Gram matrix.
    const double smooth = 0.5 * z.dot(gram * z) - atb.dot(z) + half_b2;
    trace.objective_history.push_back(smooth + problem.g.Evaluate(z));
    trace.residual_history.emplace_back(primal, dual);
    if (options.record_iterates) {
      trace.x_iterates.push_back(x);
      trace.z_iterates.push_back(z);
    }
    trace.iterations = k + 1;

    const double eps_primal =
        floor + options.tol * std::max(f.cwiseProduct(x).norm(), f.cwiseProduct(z).norm());
    const double eps_dual = floor + options.tol * f.cwiseProduct(y).norm();
    if (primal <= eps_primal && dual <= eps_dual) {
      trace.status = SolveStatus::kConverged;
      break;
    }
  }
  trace.x_final = z;
  trace.x_last = x;
  trace.y_final = y;
  return trace;
}

double OptimalScalarRho(const Matrix& a) {
  CheckMatrix(a);
  if (a.rows() < a.cols()) {
    throw Error(ErrorKind::kInvalidInput, "A must have full column rank");
  }
  const SingularRange s = ExtremeSingularValues(a);
  if (!(s.min >= kSingularThreshold * s.max) || s.max == 0.0) {
    throw Error(ErrorKind::kInvalidInput, "A must have full column rank");
  }
  return std::sqrt(s.min * s.max);
}

Vector EquilibrateGramInverse(const Matrix& a, double eps, int max_iter) {
  CheckMatrix(a);
  if (a.rows() < a.cols() || ConditionNumber(a) == kInfinity) {
    throw Error(ErrorKind::kInvalidInput, "A must have full column rank");
  }
  const Eigen::LLT<Matrix> factor(a.transpose() * a);
  if (factor.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "A^T A is not positive definite");
  }
  const Matrix inverse_gram = factor.solve(Matrix::Identity(a.cols(), a.cols()));
  return SymmetricRuiz(inverse_gram, NormOrder(2.0), eps, max_iter).d;
}

double ConvergenceRateBound(const Matrix& a, const Vector& preconditioner) {
  CheckMatrix(a);
  if (preconditioner.size() != a.cols() || !preconditioner.allFinite() ||
      preconditioner.minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "preconditioner must be positive, length n");
  }
  if (a.rows() < a.cols()) {
    throw Error(ErrorKind::kInvalidInput, "A must have full column rank");
  }
  const double kappa = ConditionNumber(a * preconditioner.cwiseInverse().asDiagonal());
  if (kappa == kInfinity) {
    throw Error(ErrorKind::kInvalidInput, "A must have full column rank");
  }
  return kappa * kappa;
}

}  // namespace eqadmm
