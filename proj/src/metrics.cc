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

#include "eqadmm/metrics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "Eigen/QR"
#include "eqadmm/errors.h"

namespace eqadmm {
namespace {

constexpr int kMaxJacobiSweeps = 100;

// Not aligned with any coordinate axis or the all-ones direction.
Vector StartVector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(j) = 1.0 + 0.5 * std::sin(static_cast<double>(j + 1));
  }
  return v.normalized();
}

// Dominant eigenvalue of a symmetric positive semidefinite operator given
// only by its action.
double DominantEigenvalue(const std::function<Vector(const Vector&)>& apply,
                          Vector v, const PowerIterationOptions& options) {
  double lambda = 0.0;
  for (int k = 0; k < options.max_iterations; ++k) {
    Vector w = apply(v);
    if (!w.allFinite()) return kInfinity;
    const double next = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    if (k > 0 && std::abs(next - lambda) <= options.tolerance * std::abs(next)) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

// Upper-triangular R with A = QR (A tall) or A^T = QR (A wide); R shares the
// singular values of A.
Matrix TriangularFactor(const Matrix& a) {
  const Matrix tall = a.rows() >= a.cols() ? a : Matrix(a.transpose());
  Eigen::HouseholderQR<Matrix> qr(tall);
  const Eigen::Index k = tall.cols();
  return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

SingularRange IterativeExtremes(const Matrix& a) {
  const Matrix r = TriangularFactor(a);
  SingularRange out;
  out.max = SpectralNorm(r);
  if (out.max == 0.0) return out;
  if ((r.diagonal().array() == 0.0).any()) {
    out.min = 0.0;
    return out;
  }
  const auto upper = r.triangularView<Eigen::Upper>();
  auto apply_inverse_gram = [&](const Vector& v) -> Vector {
    Vector w = upper.transpose().solve(v);
    return upper.solve(w);
  };
  const double mu = DominantEigenvalue(apply_inverse_gram,
                                       StartVector(r.cols()), {1e-12, 10000});
  out.min = std::isfinite(mu) && mu > 0.0 ? 1.0 / std::sqrt(mu) : 0.0;
  return out;
}

bool IsZero(const Matrix& a) { return (a.array() == 0.0).all(); }

}  // namespace

Vector JacobiSingularValues(const Matrix& a) {
  CheckMatrix(a);
  Matrix u = a.rows() >= a.cols() ? a : Matrix(a.transpose());
  const Eigen::Index n = u.cols();
  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = u.col(i).squaredNorm();
        const double beta = u.col(j).squaredNorm();
        const double gamma = u.col(i).dot(u.col(j));
        if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vector ci = u.col(i);
        u.col(i) = c * ci - s * u.col(j);
        u.col(j) = s * ci + c * u.col(j);
      }
    }
    if (!rotated) break;
  }
  Vector sigma = u.colwise().norm().transpose();
  std::sort(sigma.data(), sigma.data() + sigma.size(), std::greater<>());
  return sigma;
}

SingularRange ExtremeSingularValues(const Matrix& a) {
  CheckMatrix(a);
  if (std::min(a.rows(), a.cols()) <= kExactSvdLimit) {
    const Vector sigma = JacobiSingularValues(a);
    return {sigma(0), sigma(sigma.size() - 1)};
  }
  return IterativeExtremes(a);
}

double ConditionNumber(const Matrix& a) {
  CheckMatrix(a);
  if (IsZero(a)) {
    throw Error(ErrorKind::kInvalidInput, "condition number of the zero matrix");
  }
  const SingularRange s = ExtremeSingularValues(a);
  if (s.min < kSingularThreshold * s.max) return kInfinity;
  return s.max / s.min;
}

double PsiMetric(const Matrix& a) {
  CheckMatrix(a);
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kInvalidInput, "psi requires a square matrix");
  }
  if (IsZero(a)) throw Error(ErrorKind::kInvalidInput, "psi of the zero matrix");
  const SingularRange s = ExtremeSingularValues(a);
  if (s.min < kSingularThreshold * s.max) {
    throw Error(ErrorKind::kInvalidInput, "psi requires an invertible matrix");
  }
  return a.colwise().norm().maxCoeff() / s.min;
}

ConditionMetrics ComputeConditionMetrics(const Matrix& a) {
  CheckMatrix(a);
  if (IsZero(a)) {
    throw Error(ErrorKind::kInvalidInput, "condition metrics of the zero matrix");
  }
  const SingularRange s = ExtremeSingularValues(a);
  ConditionMetrics out;
  out.sigma_max = s.max;
  out.sigma_min = s.min;
  const bool singular = s.min < kSingularThreshold * s.max;
  out.kappa = singular ? kInfinity : s.max / s.min;
  if (!singular && a.rows() == a.cols()) {
    out.psi = a.colwise().norm().maxCoeff() / s.min;
  }
  return out;
}

std::pair<double, double> RowColRatios(const Matrix& a, NormOrder p) {
  CheckMatrix(a);
  const Vector rows = RowNorms(a, p);
  const Vector cols = ColNorms(a, p);
  if (rows.minCoeff() == 0.0 || cols.minCoeff() == 0.0) {
    throw Error(ErrorKind::kDegenerate,
                "matrix has a zero row or column; equilibration is undefined");
  }
  return {rows.maxCoeff() / rows.minCoeff(), cols.maxCoeff() / cols.minCoeff()};
}

double SpectralNorm(const Matrix& a, const PowerIterationOptions& options) {
  CheckMatrix(a);
  if (IsZero(a)) throw Error(ErrorKind::kInvalidInput, "spectral norm of the zero matrix");
  Vector start = StartVector(a.cols());
  if ((a * start).squaredNorm() == 0.0) {
    // Start vector in the null space; restart on the heaviest column.
    Eigen::Index j = 0;
    a.colwise().squaredNorm().maxCoeff(&j);
    start = Vector::Unit(a.cols(), j);
  }
  auto apply_gram = [&](const Vector& v) -> Vector {
    return a.transpose() * (a * v);
  };
  const double lambda = DominantEigenvalue(apply_gram, start, options);
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace eqadmm
