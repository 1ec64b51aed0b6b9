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

#include <cmath>

#include "Eigen/LU"
#include "Eigen/QR"
#include "eqadmm/errors.h"
#include "eqadmm/metrics.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace eqadmm {
namespace {

using ::eqadmm::testing::RandomGaussian;
using ::eqadmm::testing::RandomGaussianVector;

Matrix ScaleColumnsBy(const Matrix& a, double decades, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-decades, decades);
  Matrix out = a;
  for (Eigen::Index j = 0; j < a.cols(); ++j) out.col(j) *= std::pow(10.0, u(rng));
  return out;
}

TEST(SolveConsensusTest, ZeroRegularizerGivesLeastSquares) {
  const Matrix a = RandomGaussian(30, 8, 1);
  const Vector b = RandomGaussianVector(30, 2);
  const Vector expected = a.colPivHouseholderQr().solve(b);
  for (const Vector& f : {Vector(Vector::Ones(8)), Vector(Vector::LinSpaced(8, 0.5, 3.0))}) {
    ConsensusOptions options;
    options.tol = 1e-10;
    const ConsensusTrace trace =
        SolveConsensus({a, b, SeparableFunction::Zero(8), f}, options);
    ASSERT_TRUE(trace.converged());
    EXPECT_LE((trace.x_final - expected).norm(), 1e-7);
    EXPECT_NEAR(trace.objective_history.back(), 0.5 * (a * expected - b).squaredNorm(), 1e-8);
    EXPECT_EQ(trace.objective_history.size(), static_cast<std::size_t>(trace.iterations));
    EXPECT_EQ(trace.residual_history.size(), static_cast<std::size_t>(trace.iterations));
  }
}

TEST(SolveConsensusTest, LargeLambdaGivesZero) {
  const Matrix a = RandomGaussian(25, 10, 3);
  const Vector b = RandomGaussianVector(25, 4);
  const double lambda = (a.transpose() * b).cwiseAbs().maxCoeff();
  const ConsensusTrace trace = SolveConsensus(
      {a, b, SeparableFunction::L1(lambda, 10), Vector::Constant(10, 2.0)});
  ASSERT_TRUE(trace.converged());
  EXPECT_LE(trace.x_final.norm(), 1e-4 * b.norm());
}

TEST(SolveConsensusTest, LassoMatchesOracle) {
  const GraphFormProblem p = GenerateLasso(120, 40, 6);
  const double rho = OptimalScalarRho(p.a);
  const ConsensusTrace trace = SolveConsensus(
      {p.a, p.f.data(), p.g, Vector::Constant(40, std::sqrt(rho))});
  ASSERT_TRUE(trace.converged());
  const LassoSolution oracle = LassoOracle(p, 1e-10);
  const double objective = LassoObjective(p.a, p.f.data(), p.meta.lambda, trace.x_final);
  EXPECT_LE(std::abs(objective - oracle.objective), 1e-3 * std::abs(oracle.objective));
  EXPECT_NEAR(trace.objective_history.back(), objective, 1e-9 * std::abs(objective));
  EXPECT_LE(LassoOptimalityResidual(p.a, p.f.data(), p.meta.lambda, trace.x_final),
            1e-3 * p.meta.lambda * 10);
}

TEST(SolveConsensusTest, MaxIterationsIsNotAnError) {
  const GraphFormProblem p = GenerateLasso(50, 20, 1);
  ConsensusOptions options;
  options.max_iter = 3;
  const ConsensusTrace trace =
      SolveConsensus({p.a, p.f.data(), p.g, Vector::Ones(20)}, options);
  EXPECT_FALSE(trace.converged());
  EXPECT_EQ(trace.iterations, 3);
}

TEST(SolveConsensusTest, RejectsBadPreconditioner) {
  const Matrix a = RandomGaussian(5, 3, 1);
  EXPECT_THROW(SolveConsensus({a, Vector::Zero(5), SeparableFunction::Zero(3),
                               Vector{{1.0, 0.0, 1.0}}}),
               Error);
  EXPECT_THROW(SolveConsensus({a, Vector::Zero(4), SeparableFunction::Zero(3), Vector::Ones(3)}),
               Error);
}

TEST(SolveConsensusTest, RightScalingLeavesIteratesUnchanged) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::Index n = 10 + 5 * seed;
    const GraphFormProblem p = GenerateLasso(2 * n, n, seed);
    const Vector f = Vector::Constant(n, 1.5);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector e(n);
    for (auto& v : e) v = std::pow(10.0, u(rng));

    ConsensusOptions options;
    options.max_iter = 50;
    options.tol = 0.0;
    options.abs_tol = 0.0;
    options.record_iterates = true;
    const ConsensusTrace base = SolveConsensus({p.a, p.f.data(), p.g, f}, options);
    const ConsensusTrace scaled = SolveConsensus(
        {p.a * e.asDiagonal(), p.f.data(), p.g.Composed(e), f.cwiseProduct(e)}, options);
    ASSERT_EQ(base.x_iterates.size(), 50u);
    ASSERT_EQ(scaled.x_iterates.size(), 50u);
    for (std::size_t k = 0; k < 50; ++k) {
      EXPECT_LE((e.cwiseProduct(scaled.x_iterates[k]) - base.x_iterates[k]).cwiseAbs().maxCoeff(),
                1e-8)
          << "seed " << seed << " k " << k;
    }
  }
}

TEST(SolveConsensusTest, ScalarPreconditionerIsTextbookAdmm) {
  const GraphFormProblem p = GenerateLasso(40, 15, 12);
  const double rho = 2.5;
  ConsensusOptions options;
  options.max_iter = 100;
  options.tol = 0.0;
  options.abs_tol = 0.0;
  options.record_iterates = true;
  const ConsensusTrace trace = SolveConsensus(
      {p.a, p.f.data(), p.g, Vector::Constant(15, std::sqrt(rho))}, options);
  const testing::ScalarAdmmRun textbook =
      testing::TextbookLassoAdmm(p.a, p.f.data(), p.meta.lambda, rho, 100);
  for (std::size_t k = 0; k < 100; ++k) {
    EXPECT_LE((trace.x_iterates[k] - textbook.x[k]).cwiseAbs().maxCoeff(), 1e-10) << k;
    EXPECT_LE((trace.z_iterates[k] - textbook.z[k]).cwiseAbs().maxCoeff(), 1e-10) << k;
  }
}

TEST(OptimalScalarRhoTest, Examples) {
  EXPECT_DOUBLE_EQ(OptimalScalarRho(Matrix::Identity(3, 3)), 1.0);
  EXPECT_NEAR(OptimalScalarRho(Matrix{{1.0, 0.0}, {0.0, 4.0}}), 2.0, 1e-14);
  const Matrix a = RandomGaussian(20, 6, 2);
  const Vector s = testing::OracleSingularValues(a);
  EXPECT_NEAR(OptimalScalarRho(a), std::sqrt(s(0) * s(5)), 1e-10);
  EXPECT_THROW(OptimalScalarRho(Matrix{{1.0, 1.0}, {1.0, 1.0}}), Error);
  EXPECT_THROW(OptimalScalarRho(RandomGaussian(2, 3, 1)), Error);
}

TEST(EquilibrateGramInverseTest, OrthogonalGivesConstant) {
  const Matrix q = RandomGaussian(8, 8, 3).householderQr().householderQ();
  const Vector f = EquilibrateGramInverse(q);
  EXPECT_NEAR((f.array() / f(0) - 1.0).abs().maxCoeff(), 0.0, 1e-10);
  EXPECT_NEAR(ConvergenceRateBound(q, f), 1.0, 1e-10);
}

TEST(EquilibrateGramInverseTest, DiagonalClosedForm) {
  const Matrix a{{1.0, 0.0}, {0.0, 2.0}};
  const Vector f = EquilibrateGramInverse(a, 1e-12);
  EXPECT_NEAR(f(1) / f(0), 2.0, 1e-10);
  EXPECT_NEAR(ConvergenceRateBound(a, f), 1.0, 1e-10);
}

TEST(EquilibrateGramInverseTest, SeededInstanceIsEquilibrated) {
  const Matrix a = RandomGaussian(60, 20, 5);
  const Vector f = EquilibrateGramInverse(a);
  const Matrix p = (a.transpose() * a).inverse();
  const Matrix fpf = f.asDiagonal() * p * f.asDiagonal();
  const Vector rows = fpf.rowwise().norm();
  EXPECT_LE(rows.maxCoeff() / rows.minCoeff(), 1.0 + 1e-6);
  // A well-conditioned P can get slightly worse; the SPD bound still holds.
  EXPECT_LE(ConditionNumber(fpf), 20.0 * ConditionNumber(p));
  EXPECT_NEAR(ConvergenceRateBound(a, f), ConditionNumber(fpf), 1e-8 * ConditionNumber(fpf));
}

TEST(EquilibrateGramInverseTest, ReducesConditionOfBadlyScaledInstance) {
  const Matrix a = ScaleColumnsBy(RandomGaussian(60, 20, 5), 2.0, 6);
  const Vector f = EquilibrateGramInverse(a);
  const Matrix p = (a.transpose() * a).inverse();
  EXPECT_LE(ConditionNumber(f.asDiagonal() * p * f.asDiagonal()), ConditionNumber(p));
}

TEST(ConvergenceRateBoundTest, OrderingOnIllConditionedInstance) {
  const Matrix a = ScaleColumnsBy(RandomGaussian(80, 20, 7), 2.0, 8);
  ASSERT_GT(ConditionNumber(a), 100.0);
  const double ones = ConvergenceRateBound(a, Vector::Ones(20));
  const double scalar =
      ConvergenceRateBound(a, Vector::Constant(20, std::sqrt(OptimalScalarRho(a))));
  const double equil = ConvergenceRateBound(a, EquilibrateGramInverse(a));
  EXPECT_LE(equil, scalar);
  EXPECT_LE(scalar, ones * (1.0 + 1e-12));
  EXPECT_NEAR(ones, std::pow(ConditionNumber(a), 2.0), 1e-6 * ones);
  EXPECT_THROW(ConvergenceRateBound(a, Vector::Ones(3)), Error);
}

}  // namespace
}  // namespace eqadmm
