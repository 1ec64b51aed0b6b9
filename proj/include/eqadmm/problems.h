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

// Separable convex functions with closed-form scaled proximal operators,
// graph-form problem instances (lasso, LP), and an independent lasso
// reference solver.

#ifndef EQADMM_PROBLEMS_H_
#define EQADMM_PROBLEMS_H_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "eqadmm/matrix.h"

namespace eqadmm {

enum class FunctionKind {
  // (1/2) ||x - b||^2
  kHalfSquaredDeviation,
  // lambda ||x||_1
  kL1,
  // indicator of {x <= b}
  kIndicatorLeq,
  // c^T x
  kLinear,
  kZero,
};

const char* FunctionKindName(FunctionKind kind);
FunctionKind ParseFunctionKind(const std::string& name);

class SeparableFunction {
 public:
  static SeparableFunction HalfSquaredDeviation(Vector b);
  static SeparableFunction L1(double lambda, Eigen::Index n);
  static SeparableFunction IndicatorLeq(Vector b);
  static SeparableFunction Linear(Vector c);
  static SeparableFunction Zero(Eigen::Index n);

  FunctionKind kind() const { return kind_; }
  Eigen::Index size() const { return size_; }
  double lambda() const { return lambda_; }
  // b for the deviation and indicator kinds, c for the linear kind.
  const Vector& data() const { return data_; }
  // Empty unless the function was built by Composed().
  const Vector& inner_scale() const { return inner_; }

  // x -> fn(inner .* x). Inner scales compose multiplicatively.
  SeparableFunction Composed(const Vector& inner) const;

  // fn(x); +inf outside the domain of an indicator (relative slack 1e-9).
  double Evaluate(const Vector& x) const;

  // argmin_u fn(scale .* u) + (1/2) ||u - v||^2. Throws kInvalidInput for a
  // nonpositive scale or mismatched sizes.
  Vector ScaledProx(const Vector& scale, const Vector& v) const;

  // argmin_z fn(z) + (1/2) sum_i w_i (z_i - v_i)^2.
  Vector WeightedProx(const Vector& weights, const Vector& v) const;

 private:
  SeparableFunction(FunctionKind kind, Eigen::Index size, double lambda, Vector data)
      : kind_(kind), size_(size), lambda_(lambda), data_(std::move(data)) {}

  void CheckSize(const Vector& v, const char* what) const;

  FunctionKind kind_;
  Eigen::Index size_;
  double lambda_ = 0.0;
  Vector data_;
  Vector inner_;
};

struct ProblemMeta {
  std::string kind = "custom";
  std::uint64_t seed = 0;
  // Lasso only; NaN otherwise.
  double lambda = std::numeric_limits<double>::quiet_NaN();
  // Generator certificates: ground truth / interior point and LP dual point.
  Vector x0;
  Vector mu;
};

// minimize f(y) + g(x) subject to A x = y.
struct GraphFormProblem {
  Matrix a;
  SeparableFunction f;
  SeparableFunction g;
  ProblemMeta meta;

  Eigen::Index rows() const { return a.rows(); }
  Eigen::Index cols() const { return a.cols(); }

  // Throws kInvalidInput on dimension mismatch.
  void Validate() const;

  double Objective(const Vector& x, const Vector& y) const {
    return f.Evaluate(y) + g.Evaluate(x);
  }
};

// Independent standard normal entries, column-major fill.
Matrix GenerateGaussian(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

// Gaussian A, 10%-sparse ground truth x0, b = A x0 + 0.1 noise,
// lambda = 0.1 ||A^T b||_inf; f = (1/2)||y - b||^2, g = lambda ||x||_1.
GraphFormProblem GenerateLasso(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

// Gaussian A, strictly feasible x0 (b = A x0 + |slack|), c = -A^T mu with
// mu > 0; f = indicator{y <= b}, g = c^T x.
GraphFormProblem GenerateLp(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

// Multiplies column j of A by 10^{u_j}, u_j uniform in [-decades, decades];
// recomputes lambda for lasso instances so the regime is unchanged.
GraphFormProblem ScaleColumns(GraphFormProblem problem, double decades,
                              std::uint64_t seed);

// Directory layout: A.mtx, f.txt / g.txt (data vectors), meta.txt
// (key=value), optional x0.txt and mu.txt.
void SaveProblem(const GraphFormProblem& problem, const std::string& dir);
GraphFormProblem LoadProblem(const std::string& dir);

struct LassoSolution {
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

// Largest per-coordinate violation of 0 in A^T(Ax - b) + lambda d||x||_1.
double LassoOptimalityResidual(const Matrix& a, const Vector& b, double lambda,
                               const Vector& x);

double LassoObjective(const Matrix& a, const Vector& b, double lambda, const Vector& x);

// Proximal gradient with backtracking, run until the optimality residual is
// <= tol. Throws kOracleFailure after 1e6 iterations.
LassoSolution LassoOracle(const Matrix& a, const Vector& b, double lambda, double tol);
LassoSolution LassoOracle(const GraphFormProblem& problem, double tol);

}  // namespace eqadmm

#endif  // EQADMM_PROBLEMS_H_
