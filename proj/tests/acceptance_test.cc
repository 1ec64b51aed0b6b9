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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eqadmm/consensus_admm.h"
#include "eqadmm/equilibration.h"
#include "eqadmm/graph_splitting.h"
#include "eqadmm/lemma_checks.h"
#include "eqadmm/metrics.h"
#include "eqadmm/problems.h"
#include "oracles.h"

namespace eqadmm {
namespace {

using testing::RandomGaussian;
using testing::RandomGaussianVector;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double Norm2(const Vector& a, const Vector& b) {
  return std::sqrt(a.squaredNorm() + b.squaredNorm());
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string Format(const char* format, Args... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

constexpr int kSeeds = 10;

Outcome EquilibrationConverges() {
  EquilibrationOptions options;
  options.eps = 1e-6;
  options.max_iter = 100;
  options.compute_condition = false;
  int ok = 0;
  int worst_iterations = 0;
  double worst_ratio = 1.0;
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = RandomGaussian(750, 250, seed);
    for (auto* run : {&Ruiz, &SinkhornKnopp}) {
      const Equilibration e = (*run)(a, options);
      const double ratio = std::max(e.report.final_r1(), e.report.final_r2());
      worst_iterations = std::max(worst_iterations, e.report.iterations);
      worst_ratio = std::max(worst_ratio, ratio);
      ok += e.report.converged && ratio <= 1.0 + 1e-5;
    }
  }
  const double elapsed = Seconds(start);
  return {ok == 40 && elapsed < 5.0,
          Format("%d/40 converged, max iterations %d, max ratio 1+%.2e, %.2f s", ok,
                 worst_iterations, worst_ratio - 1.0, elapsed)};
}

Outcome ConditionNumberReduced() {
  EquilibrationOptions options;
  options.compute_condition = false;
  int reduced = 0;
  std::vector<double> factors;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed + 500);
    std::uniform_real_distribution<double> exponent(-3.0, 3.0);
    Vector scale(250);
    for (auto& s : scale) s = std::pow(10.0, exponent(rng));
    const Matrix a = RandomGaussian(750, 250, seed) * scale.asDiagonal();
    const Equilibration e = Ruiz(a, options);
    const double before = ConditionNumber(a);
    const double after = ConditionNumber(e.scaling.Apply(a));
    reduced += after < before;
    factors.push_back(before / after);
  }
  std::nth_element(factors.begin(), factors.begin() + 10, factors.end());
  const double upper = factors[10];
  const double lower = *std::max_element(factors.begin(), factors.begin() + 10);
  const double median = 0.5 * (lower + upper);
  return {reduced >= 18 && median >= 10.0,
          Format("reduced on %d/20, median factor %.3g", reduced, median)};
}

Outcome LemmaBounds() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> dim(3, 20);
  int violations = 0;
  int skipped = 0;
  double margin = kInfinity;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    const Matrix a = RandomGaussian(n, n, 7000 + trial);
    const LemmaTrial t = CheckColumnScalingBounds(a, 100, rng);
    skipped += t.skipped;
    violations += t.violation.has_value();
    margin = std::min(margin, t.min_margin);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    const Matrix factor = RandomGaussian(n, n, 8000 + trial);
    const LemmaTrial t = CheckSpdBound(factor, 100, rng);
    skipped += t.skipped;
    violations += t.violation.has_value();
    margin = std::min(margin, t.min_margin);
  }
  const double elapsed = Seconds(start);
  return {violations == 0 && skipped == 0 && elapsed < 10.0,
          Format("100 matrices x 100 diagonals, %d violations, %d skipped, min margin %.3g, "
                 "%.2f s",
                 violations, skipped, margin, elapsed)};
}

Outcome ProjectionCorrect() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 30);
  double worst_idempotence = 0.0;
  double worst_optimality = 0.0;
  double worst_block = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const Matrix m = RandomGaussian(rows, cols, 20000 + trial);
    const ProjectionCache cache(m);
    const Vector xt = RandomGaussianVector(cols, 21000 + trial);
    const Vector yt = RandomGaussianVector(rows, 22000 + trial);
    const auto [x, y] = cache.Project(xt, yt);
    const auto [x2, y2] = cache.Project(x, y);
    worst_idempotence =
        std::max(worst_idempotence, Norm2(x2 - x, y2 - y) / std::max(1.0, Norm2(x, y)));
    const double distance = Norm2(x - xt, y - yt);
    for (std::uint64_t k = 0; k < 20; ++k) {
      const Vector a = x + RandomGaussianVector(cols, 100000 + 100 * trial + k);
      worst_optimality = std::max(worst_optimality, distance - Norm2(a - xt, m * a - yt));
    }
  }
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const int rows = dim(rng), cols = dim(rng);
    const Matrix m = RandomGaussian(rows, cols, 30000 + trial);
    const Vector xt = RandomGaussianVector(cols, 31000 + trial);
    const Vector yt = RandomGaussianVector(rows, 32000 + trial);
    const auto [x, y] = ProjectionCache(m).Project(xt, yt);
    const auto [xo, yo] = testing::BlockFormulaProjection(m, xt, yt);
    worst_block = std::max(worst_block, Norm2(x - xo, y - yo) / std::max(1.0, Norm2(xo, yo)));
  }
  return {worst_idempotence <= 1e-10 && worst_optimality <= 1e-10 && worst_block <= 1e-10,
          Format("idempotence %.2e, optimality excess %.2e, block formula %.2e",
                 worst_idempotence, worst_optimality, worst_block)};
}

Outcome LassoMatchesOracle() {
  int ok = 0;
  double worst_gap = 0.0;
  double worst_time = 0.0;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const GraphFormProblem p = GenerateLasso(750, 250, seed);
    const auto start = Clock::now();
    const SolveTrace trace = SolveGraphForm(p, PlanScaling(p.a));
    const double elapsed = Seconds(start);
    const LassoSolution oracle = LassoOracle(p, 1e-10);
    const double gap = std::abs(trace.final_objective - oracle.objective) / oracle.objective;
    worst_gap = std::max(worst_gap, gap);
    worst_time = std::max(worst_time, elapsed);
    ok += trace.converged() && gap <= 1e-3 && elapsed < 30.0;
  }
  return {ok == kSeeds, Format("%d/%d seeds, worst relative gap %.2e, slowest %.2f s", ok,
                               kSeeds, worst_gap, worst_time)};
}

Outcome ConsensusOrdering() {
  int ordered = 0;
  int gap = 0;
  std::string counts;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const GraphFormProblem p = ScaleColumns(GenerateLasso(750, 250, seed), 2.0, seed + 1000);
    const Eigen::Index n = p.cols();
    const double rho = OptimalScalarRho(p.a);
    int iterations[3];
    const Vector preconditioners[3] = {Vector::Ones(n), Vector::Constant(n, std::sqrt(rho)),
                                       EquilibrateGramInverse(p.a)};
    for (int k = 0; k < 3; ++k) {
      iterations[k] =
          SolveConsensus({p.a, p.f.data(), p.g, preconditioners[k]}).iterations;
    }
    ordered += iterations[0] >= iterations[1] && iterations[1] >= iterations[2];
    gap += iterations[2] <= 0.05 * iterations[0];
    if (seed < 3) counts += Format(" %d/%d/%d", iterations[0], iterations[1], iterations[2]);
  }
  return {ordered >= 9 && gap >= 8,
          Format("ordering on %d/%d, 20x gap on %d/%d, first seeds%s", ordered, kSeeds, gap,
                 kSeeds, counts.c_str())};
}

// The lasso sweep behind the parameter-selection and adaptive-step checks.
// Steps are in units of gamma, so the center cell is alpha = beta (D = E
// before scaling).
constexpr int kSweepCap = 2000;

struct SweepOutcome {
  bool unit_row_good = false;
  bool adaptive_good = false;
  int unit_best = 0;
  int minimum = 0;
  int adaptive_iterations = 0;
  int adaptive_refactors = 0;
  int row_worst = 0;
};

SweepOutcome SweepSeed(std::uint64_t seed) {
  const GraphFormProblem p = GenerateLasso(750, 250, seed);
  const ScalingPlan plan = PlanScaling(p.a);
  const SweepGrid grid{LogSpace(0.01, 100.0, 9), LogSpace(0.01 * plan.gamma, 100.0 * plan.gamma, 9)};
  SolverConfig config;
  config.max_iter = kSweepCap;
  config.record_history = false;
  const SweepTable table = Sweep(p, plan, grid, config);
  // Row 4 is alpha * beta * gamma = 1.
  constexpr std::size_t kUnitRow = 4;
  SweepOutcome out;
  out.minimum = table.min_iterations;
  out.unit_best = kSweepCap;
  for (std::size_t j = 0; j < grid.step.size(); ++j) {
    out.unit_best = std::min(out.unit_best, table.at(kUnitRow, j).iterations);
    out.row_worst = std::max(out.row_worst, table.at(kUnitRow, j).iterations);
  }
  out.unit_row_good = out.unit_best <= 3 * out.minimum;

  SolverConfig adaptive;
  adaptive.adaptive = true;
  adaptive.record_history = false;
  const SolveTrace trace =
      SolveGraphForm(p, plan.WithParameters(grid.scaling[kUnitRow], plan.gamma), adaptive);
  out.adaptive_iterations = trace.iterations;
  out.adaptive_refactors = trace.refactor_count;
  out.adaptive_good = trace.converged() && trace.iterations <= out.row_worst;
  return out;
}

}  // namespace
}  // namespace eqadmm

int main() {
  using namespace eqadmm;
  int failures = 0;
  auto report = [&failures](int number, const char* name, const Outcome& outcome) {
    std::printf("%s criterion %d (%s): %s\n", outcome.pass ? "PASS" : "FAIL", number, name,
                outcome.detail.c_str());
    std::fflush(stdout);
    failures += !outcome.pass;
  };

  report(1, "equilibration convergence", EquilibrationConverges());
  report(2, "condition number reduction", ConditionNumberReduced());
  report(3, "diagonal scaling bounds", LemmaBounds());
  report(4, "projection correctness", ProjectionCorrect());
  report(5, "lasso by graph splitting", LassoMatchesOracle());
  report(6, "consensus preconditioner ordering", ConsensusOrdering());

  int unit_row_good = 0;
  int adaptive_good = 0;
  bool single_factorization = true;
  std::string unit_detail;
  std::string adaptive_detail;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const SweepOutcome s = SweepSeed(seed);
    unit_row_good += s.unit_row_good;
    adaptive_good += s.adaptive_good;
    single_factorization = single_factorization && s.adaptive_refactors == 1;
    unit_detail += Format(" %d/%d", s.unit_best, s.minimum);
    adaptive_detail += Format(" %d/%d", s.adaptive_iterations, s.row_worst);
  }
  report(7, "unit scaled norm is near the best",
         {unit_row_good >= 8, Format("%d/%d seeds, best-in-row/grid-min (cap %d):%s",
                                     unit_row_good, kSeeds, kSweepCap, unit_detail.c_str())});
  report(8, "adaptive step",
         {single_factorization && adaptive_good >= 8,
          Format("one factorization on all seeds: %s, %d/%d seeds, adaptive/row-worst:%s",
                 single_factorization ? "yes" : "no", adaptive_good, kSeeds,
                 adaptive_detail.c_str())});

  {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Eigen::Index n = 5 + 5 * static_cast<Eigen::Index>(seed);
      const GraphFormProblem p = GenerateLasso(2 * n, n, 40 + seed);
      const Vector f = Vector::Constant(n, 1.5);
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> exponent(-1.0, 1.0);
      Vector e(n);
      for (auto& v : e) v = std::pow(10.0, exponent(rng));
      ConsensusOptions options;
      options.max_iter = 50;
      options.tol = 0.0;
      options.abs_tol = 0.0;
      options.record_iterates = true;
      const ConsensusTrace base = SolveConsensus({p.a, p.f.data(), p.g, f}, options);
      const ConsensusTrace scaled = SolveConsensus(
          {p.a * e.asDiagonal(), p.f.data(), p.g.Composed(e), f.cwiseProduct(e)}, options);
      for (std::size_t k = 0; k < 50; ++k) {
        worst = std::max(worst, (e.cwiseProduct(scaled.x_iterates[k]) - base.x_iterates[k])
                                    .cwiseAbs()
                                    .maxCoeff());
      }
    }
    report(9, "right preconditioner invariance",
           {worst <= 1e-8, Format("10 instances, n = 5..50, 50 iterations, max deviation %.2e",
                                  worst)});
  }

  {
    const GraphFormProblem p = GenerateLasso(60, 25, 99);
    const double rho = 2.5;
    const int iterations = 200;
    ConsensusOptions options;
    options.max_iter = iterations;
    options.tol = 0.0;
    options.abs_tol = 0.0;
    options.record_iterates = true;
    const ConsensusTrace consensus = SolveConsensus(
        {p.a, p.f.data(), p.g, Vector::Constant(p.cols(), std::sqrt(rho))}, options);
    const testing::ScalarAdmmRun textbook =
        testing::TextbookLassoAdmm(p.a, p.f.data(), p.meta.lambda, rho, iterations);

    ScalingPlan plan = UnequilibratedPlan(p.a);
    plan.alpha = std::sqrt(rho);
    plan.beta = 1.0 / std::sqrt(rho);
    SolverConfig config;
    config.tol = 0.0;
    config.abs_tol = 0.0;
    config.max_iter = iterations;
    config.record_iterates = true;
    const SolveTrace graph = SolveGraphForm(p, plan, config);
    const std::vector<Vector> graph_textbook = testing::TextbookLassoGraphSplitting(
        p.a, p.f.data(), p.meta.lambda, rho, iterations);

    double worst = 0.0;
    for (int k = 0; k < iterations; ++k) {
      worst = std::max({worst, (consensus.x_iterates[k] - textbook.x[k]).cwiseAbs().maxCoeff(),
                        (consensus.z_iterates[k] - textbook.z[k]).cwiseAbs().maxCoeff(),
                        (graph.x_iterates[k] - graph_textbook[k]).cwiseAbs().maxCoeff()});
    }
    report(10, "scalar penalty equivalence",
           {worst <= 1e-10,
            Format("consensus and graph form, %d iterations, max deviation %.2e", iterations,
                   worst)});
  }

  std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria failed");
  return failures == 0 ? 0 : 1;
}
