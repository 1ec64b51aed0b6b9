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

// Randomized checks of the column-equalization bounds:
//   psi(A Dhat)   <= psi(A D)               (psi optimality)
//   kappa(A Dhat) <= sqrt(n) kappa(A D)
//   kappa(Dhat P Dhat) <= n kappa(D P D)    (P symmetric positive definite)
// where Dhat equalizes column norms, over sampled positive diagonal D.

#ifndef EQADMM_LEMMA_CHECKS_H_
#define EQADMM_LEMMA_CHECKS_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "eqadmm/matrix.h"

namespace eqadmm {

// Additive slack allowed on every bound.
constexpr double kLemmaSlack = 1e-9;

// dhat_j = 1 / ||A_j||_2, so every column of A diag(dhat) has unit norm.
Vector ColumnEqualizer(const Matrix& a);

// dhat_j = 1 / sqrt(P_jj).
Vector SpdEqualizer(const Matrix& p);

// Log-uniform positive diagonal with entries in [1e-2, 1e2].
Vector RandomPositiveDiagonal(Eigen::Index n, std::mt19937_64& rng);

struct LemmaViolation {
  std::string bound;
  Matrix matrix;
  Vector diagonal;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LemmaTrial {
  // Set when the matrix was numerically singular and the trial was skipped.
  bool skipped = false;
  std::optional<LemmaViolation> violation;
  // Smallest rhs - lhs seen over all samples and bounds.
  double min_margin = kInfinity;
};

// Checks the psi and sqrt(n) kappa bounds for square A against `samples`
// random diagonals.
LemmaTrial CheckColumnScalingBounds(const Matrix& a, int samples,
                                    std::mt19937_64& rng);

// Checks the n kappa bound for P = factor * factor^T, and that
// kappa(D P D) = kappa(factor^T D)^2 on every sample.
LemmaTrial CheckSpdBound(const Matrix& factor, int samples, std::mt19937_64& rng);

struct VerifySummary {
  int trials = 0;
  int skipped = 0;
  std::optional<LemmaViolation> first_violation;
};

// Random Gaussian A (n x n) and factors for P; `dim_lo..dim_hi` inclusive.
// Trials run on up to `threads` workers (0 = DefaultThreadCount()).
VerifySummary VerifyBounds(int trials, int dim_lo, int dim_hi, int samples,
                           std::uint64_t seed, int threads = 0);

}  // namespace eqadmm

#endif  // EQADMM_LEMMA_CHECKS_H_
