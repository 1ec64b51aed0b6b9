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

// Reference computations for tests. Nothing here shares a code path with
// the library routines it is used to check.

#ifndef EQADMM_TESTS_ORACLES_H_
#define EQADMM_TESTS_ORACLES_H_

#include <cstdint>
#include <functional>
#include <random>
#include <utility>

#include "Eigen/Core"

namespace eqadmm::testing {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Matrix RandomGaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);
Vector RandomGaussianVector(Eigen::Index n, std::uint64_t seed);

// Singular values (descending) from the eigenvalues of A^T A (or A A^T)
// computed by the cyclic two-sided Jacobi eigenvalue method.
Vector OracleSingularValues(const Matrix& a);

// Pi_G from the explicit (m+n) x (m+n) block formula
// [I M^T; M -I]^{-1} [I M^T; 0 0] [x; y].
std::pair<Vector, Vector> BlockFormulaProjection(const Matrix& m, const Vector& x,
                                                 const Vector& y);

// Minimizer of a unimodal function on [lo, hi] by golden-section search.
double GoldenSectionMinimize(const std::function<double(double)>& f, double lo,
                             double hi, double tol);

// Scales a nonnegative matrix to be doubly stochastic by alternately
// normalizing row sums and column sums `iterations` times.
Matrix BruteForceSinkhorn(const Matrix& nonnegative, int iterations);

// Textbook ADMM with scalar penalty rho for
//   minimize (1/2)||Ax - b||^2 + lambda ||z||_1  s.t.  x = z
// in scaled form (u = y / rho). Returns the x and z iterates.
struct ScalarAdmmRun {
  std::vector<Vector> x;
  std::vector<Vector> z;
};
ScalarAdmmRun TextbookLassoAdmm(const Matrix& a, const Vector& b, double lambda,
                                double rho, int iterations);

// Textbook graph projection splitting with scalar rho for the lasso in
// graph form (f = (1/2)||y - b||^2, g = lambda ||x||_1). Returns the x
// half-step iterates.
std::vector<Vector> TextbookLassoGraphSplitting(const Matrix& a, const Vector& b,
                                                double lambda, double rho,
                                                int iterations);

}  // namespace eqadmm::testing

#endif  // EQADMM_TESTS_ORACLES_H_
