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

#include "eqadmm/lemma_checks.h"

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "eqadmm/errors.h"
#include "eqadmm/metrics.h"
#include "eqadmm/parallel.h"

namespace eqadmm {
namespace {

// Trials whose matrix has kappa above this are skipped: the bounds are exact
// statements and floating point cannot resolve them there.
constexpr double kSkipConditioning = 1e10;

Matrix GaussianMatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = normal(rng);
  }
  return a;
}

bool TooIllConditioned(const Matrix& a) {
  const SingularRange s = ExtremeSingularValues(a);
  return s.min * kSkipConditioning < s.max;
}

void Record(LemmaTrial& trial, const char* bound, const Matrix& a,
            const Vector& d, double lhs, double rhs) {
  trial.min_margin = std::min(trial.min_margin, rhs - lhs);
  if (lhs > rhs && !trial.violation) {
    trial.violation = LemmaViolation{bound, a, d, lhs, rhs};
  }
}

}  // namespace

Vector ColumnEqualizer(const Matrix& a) {
  const Vector norms = a.colwise().norm().transpose();
  if (norms.minCoeff() == 0.0) {
    throw Error(ErrorKind::kDegenerate, "zero column cannot be equalized");
  }
  return norms.cwiseInverse();
}

Vector SpdEqualizer(const Matrix& p) {
  const Vector diag = p.diagonal();
  if (diag.minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "matrix is not positive definite");
  }
  return diag.cwiseSqrt().cwiseInverse();
}

Vector RandomPositiveDiagonal(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-2.0, 2.0);
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = std::pow(10.0, exponent(rng));
  return d;
}

LemmaTrial CheckColumnScalingBounds(const Matrix& a, int samples,
                                    std::mt19937_64& rng) {
  CheckMatrix(a);
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kInvalidInput, "column scaling bounds need a square matrix");
  }
  LemmaTrial trial;
  if (TooIllConditioned(a)) {
    trial.skipped = true;
    return trial;
  }
  const double sqrt_n = std::sqrt(static_cast<double>(a.cols()));
  const Matrix equalized = a * ColumnEqualizer(a).asDiagonal();
  const double psi_hat = PsiMetric(equalized);
  const double kappa_hat = ConditionNumber(equalized);
  for (int s = 0; s < samples; ++s) {
    const Vector d = RandomPositiveDiagonal(a.cols(), rng);
    const Matrix scaled = a * d.asDiagonal();
    Record(trial, "psi(A Dhat) <= psi(A D)", a, d, psi_hat,
           PsiMetric(scaled) + kLemmaSlack);
    Record(trial, "kappa(A Dhat) <= sqrt(n) kappa(A D)", a, d, kappa_hat,
           sqrt_n * ConditionNumber(scaled) + kLemmaSlack);
  }
  return trial;
}

LemmaTrial CheckSpdBound(const Matrix& factor, int samples, std::mt19937_64& rng) {
  CheckMatrix(factor);
  if (factor.rows() != factor.cols()) {
    throw Error(ErrorKind::kInvalidInput, "SPD bound needs a square factor");
  }
  LemmaTrial trial;
  if (TooIllConditioned(factor)) {
    trial.skipped = true;
    return trial;
  }
  const Matrix p = factor * factor.transpose();
  const double n = static_cast<double>(p.cols());
  const Vector d_hat = SpdEqualizer(p);
  const double kappa_hat = ConditionNumber(ScaleMatrix(d_hat, p, d_hat));
  for (int s = 0; s < samples; ++s) {
    const Vector d = RandomPositiveDiagonal(p.cols(), rng);
    const double kappa_dpd = ConditionNumber(ScaleMatrix(d, p, d));
    const double kappa_ad = ConditionNumber(factor.transpose() * d.asDiagonal());
    // kappa(D P D) = kappa(F^T D)^2 up to the accuracy of the explicit product.
    const double identity_gap = std::abs(kappa_dpd - kappa_ad * kappa_ad);
    const double identity_tol = 1e-6 * kappa_dpd + 1e-14 * kappa_dpd * kappa_dpd;
    Record(trial, "kappa(D P D) = kappa(F^T D)^2", factor, d, identity_gap,
           identity_tol);
    Record(trial, "kappa(Dhat P Dhat) <= n kappa(D P D)", factor, d, kappa_hat,
           n * kappa_dpd + kLemmaSlack);
  }
  return trial;
}

VerifySummary VerifyBounds(int trials, int dim_lo, int dim_hi, int samples,
                           std::uint64_t seed, int threads) {
  if (trials < 0 || dim_lo < 1 || dim_hi < dim_lo || samples < 1) {
    throw Error(ErrorKind::kInvalidInput, "invalid verification parameters");
  }
  // One generator per trial keeps results independent of scheduling.
  std::vector<std::array<LemmaTrial, 2>> results(trials);
  ParallelFor(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    std::seed_seq sequence{seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(sequence);
    const int n = std::uniform_int_distribution<int>(dim_lo, dim_hi)(rng);
    results[t][0] = CheckColumnScalingBounds(GaussianMatrix(n, n, rng), samples, rng);
    results[t][1] = CheckSpdBound(GaussianMatrix(n, n, rng), samples, rng);
  });
  VerifySummary summary;
  for (const auto& pair : results) {
    for (const LemmaTrial& trial : pair) {
      ++summary.trials;
      if (trial.skipped) ++summary.skipped;
      if (trial.violation && !summary.first_violation) {
        summary.first_violation = trial.violation;
      }
    }
  }
  return summary;
}

}  // namespace eqadmm
