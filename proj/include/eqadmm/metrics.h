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

#ifndef EQADMM_METRICS_H_
#define EQADMM_METRICS_H_

#include <optional>
#include <utility>

#include "eqadmm/matrix.h"

namespace eqadmm {

// sigma_min below this multiple of sigma_max is treated as zero.
constexpr double kSingularThreshold = 1e-12;

// Up to this value of min(m, n) singular values come from an exact
// one-sided Jacobi SVD; above it the extremes come from power iteration and
// inverse iteration on the Gram matrix.
constexpr Eigen::Index kExactSvdLimit = 200;

struct ConditionMetrics {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  // +inf when the matrix is numerically singular.
  double kappa = kInfinity;
  // Defined for square invertible matrices only.
  std::optional<double> psi;
};

struct SingularRange {
  double max = 0.0;
  double min = 0.0;
};

// All min(m, n) singular values in descending order (one-sided Jacobi).
Vector JacobiSingularValues(const Matrix& a);

// Largest and smallest of the min(m, n) singular values.
SingularRange ExtremeSingularValues(const Matrix& a);

// sigma_max / sigma_min, or +inf if sigma_min < 1e-12 sigma_max. Throws
// kInvalidInput for the zero matrix.
double ConditionNumber(const Matrix& a);

// ||A^{-1}|| times the largest column 2-norm. Square invertible A only.
double PsiMetric(const Matrix& a);

ConditionMetrics ComputeConditionMetrics(const Matrix& a);

// (max/min row l_p norm, max/min column l_p norm). Throws kDegenerate when a
// row or column is zero.
std::pair<double, double> RowColRatios(const Matrix& a, NormOrder p);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

// sigma_max via power iteration on A^T A from a fixed start vector.
double SpectralNorm(const Matrix& a, const PowerIterationOptions& options = {});

}  // namespace eqadmm

#endif  // EQADMM_METRICS_H_
