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

// Diagonal equilibration: find positive D, E so that every row of DAE has
// the same l_p norm and every column of DAE has the same l_p norm.

#ifndef EQADMM_EQUILIBRATION_H_
#define EQADMM_EQUILIBRATION_H_

#include <vector>

#include "eqadmm/matrix.h"

namespace eqadmm {

// Scaling entries outside [kMinScale, kMaxScale] abort with kDivergence.
constexpr double kMinScale = 1e-30;
constexpr double kMaxScale = 1e30;

// D = diag(d1) (length m) and E = diag(d2) (length n).
struct DiagonalScaling {
  Vector d1;
  Vector d2;

  static DiagonalScaling Identity(Eigen::Index m, Eigen::Index n);

  // Throws kInvalidInput unless every entry is positive and finite.
  void Validate() const;

  // D * a * E.
  Matrix Apply(const Matrix& a) const;
};

struct EquilibrationReport {
  int iterations = 0;
  // Row / column norm ratios of DAE; entry k is after k passes.
  std::vector<double> r1_history;
  std::vector<double> r2_history;
  // NaN when condition numbers were not requested.
  double kappa_before = 0.0;
  double kappa_after = 0.0;
  bool converged = false;

  double final_r1() const;
  double final_r2() const;
};

struct EquilibrationOptions {
  NormOrder p{2.0};
  // Stop once r1 - 1 <= eps and r2 - 1 <= eps.
  double eps = 1e-6;
  int max_iter = 100;
  bool compute_condition = true;
};

struct Equilibration {
  DiagonalScaling scaling;
  EquilibrationReport report;
};

// Alternating row/column normalization. For signed entries and general p
// the iteration runs on N_ij = |A_ij|^p and the p-th roots of its scalings
// are returned; p = inf uses max-abs aggregation directly.
Equilibration SinkhornKnopp(const Matrix& a, const EquilibrationOptions& options = {});

// Multiplicative updates by inverse square roots of the current row and
// column norms, with an (m/n)^{1/(2p)} correction on the columns so that
// rectangular matrices reach a fixed point.
Equilibration Ruiz(const Matrix& a, const EquilibrationOptions& options = {});

// Scale-free stationarity residual of the convex equilibration problem:
// the largest relative deviation of a row (column) sum of |DAE|^p from the
// mean row (column) sum. Zero exactly when DAE is equilibrated.
double EquilibrationResidual(const Matrix& a, const DiagonalScaling& scaling,
                             NormOrder p);

struct SymmetricEquilibration {
  Vector d;
  int iterations = 0;
  // Row norm ratio of diag(d) P diag(d).
  double ratio = 0.0;
  bool converged = false;
};

// Ruiz with a single scaling applied on both sides of a symmetric matrix.
SymmetricEquilibration SymmetricRuiz(const Matrix& p_matrix, NormOrder p,
                                     double eps, int max_iter);

}  // namespace eqadmm

#endif  // EQADMM_EQUILIBRATION_H_
