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

#include "eqadmm/commands.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eqadmm/consensus_admm.h"
#include "eqadmm/equilibration.h"
#include "eqadmm/graph_splitting.h"
#include "eqadmm/lemma_checks.h"
#include "eqadmm/matrix_market.h"
#include "eqadmm/metrics.h"
#include "eqadmm/parallel.h"
#include "eqadmm/problems.h"

namespace eqadmm {
namespace {

namespace fs = std::filesystem;

// Files are staged in memory and written together once the command has
// nothing left that can fail.
class OutputSet {
 public:
  std::ostream& Add(const std::string& name) {
    files_.emplace_back(name, std::make_unique<std::ostringstream>());
    auto& stream = *files_.back().second;
    stream.precision(std::numeric_limits<double>::max_digits10);
    return stream;
  }

  void Commit(const std::string& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create '" + dir + "': " + ec.message());
    std::vector<fs::path> staged;
    for (const auto& [name, content] : files_) {
      const fs::path tmp = fs::path(dir) / (name + ".tmp");
      std::ofstream out(tmp);
      out << content->str();
      out.close();
      staged.push_back(tmp);
      if (!out) {
        for (const auto& path : staged) fs::remove(path, ec);
        throw Error(ErrorKind::kIo, "cannot write '" + tmp.string() + "'");
      }
    }
    for (std::size_t i = 0; i < files_.size(); ++i) {
      fs::rename(staged[i], fs::path(dir) / files_[i].first, ec);
      if (ec) throw Error(ErrorKind::kIo, "cannot write '" + files_[i].first + "': " + ec.message());
    }
  }

 private:
  std::vector<std::pair<std::string, std::unique_ptr<std::ostringstream>>> files_;
};

// Column scaling draws from its own stream, not the generator's.
std::uint64_t ColumnScaleSeed(std::uint64_t seed) { return seed ^ 0x9e3779b97f4a7c15ULL; }

void WriteVectorTo(std::ostream& out, const Vector& v) { WriteVector(out, v); }

Matrix ScaledColumns(Matrix a, double decades, std::uint64_t seed) {
  if (decades <= 0.0) return a;
  GraphFormProblem problem{std::move(a), SeparableFunction::Zero(0),
                           SeparableFunction::Zero(0), {}};
  return ScaleColumns(std::move(problem), decades, seed).a;
}

GraphFormProblem MakeProblem(const RunConfig& cfg, std::uint64_t seed) {
  if (!cfg.input.empty()) return LoadProblem(cfg.input);
  if (cfg.gen != "lasso" && cfg.gen != "lp") {
    throw Error(ErrorKind::kInvalidInput,
                "this command needs --input DIR or --gen lasso|lp");
  }
  GraphFormProblem problem =
      cfg.gen == "lasso" ? GenerateLasso(cfg.m, cfg.n, seed) : GenerateLp(cfg.m, cfg.n, seed);
  if (cfg.col_scale > 0.0) problem = ScaleColumns(std::move(problem), cfg.col_scale, ColumnScaleSeed(seed));
  return problem;
}

Matrix MakeMatrix(const RunConfig& cfg) {
  if (!cfg.input.empty()) return ReadMatrixMarket(cfg.input);
  if (cfg.gen == "gaussian") {
    return ScaledColumns(GenerateGaussian(cfg.m, cfg.n, cfg.seed), cfg.col_scale,
                         ColumnScaleSeed(cfg.seed));
  }
  if (cfg.gen == "lasso" || cfg.gen == "lp") return MakeProblem(cfg, cfg.seed).a;
  throw Error(ErrorKind::kInvalidInput, "need --input PATH or --gen gaussian|lasso|lp");
}

// Equilibrated plan, or the identity scaling when equilibration is off or
// impossible (zero rows or columns).
ScalingPlan MakePlan(const RunConfig& cfg, const Matrix& a, std::ostream& err) {
  if (!cfg.equilibrate) return UnequilibratedPlan(a, cfg.target_norm, cfg.rho0);
  try {
    return PlanScaling(a, cfg.p, cfg.target_norm, cfg.rho0);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate && e.kind() != ErrorKind::kDivergence) throw;
    err << "note: " << e.what() << "; solving without equilibration\n";
    return UnequilibratedPlan(a, cfg.target_norm, cfg.rho0);
  }
}

SolverConfig MakeSolverConfig(const RunConfig& cfg) {
  SolverConfig config;
  config.tol = cfg.tol;
  config.max_iter = cfg.max_iter;
  config.adaptive = cfg.adaptive;
  return config;
}

template <typename Body>
int Guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

int ParseInt(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::kInvalidInput, "bad " + what + " '" + text + "'");
  }
  return value;
}

double ParseDouble(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorKind::kInvalidInput, "bad " + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> Split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

AxisSpec ParseAxis(const std::string& text) {
  const auto parts = Split(text, ':');
  if (parts.size() != 3) throw Error(ErrorKind::kInvalidInput, "grid axis must be LO:HI:STEPS");
  AxisSpec axis{ParseDouble(parts[0], "grid bound"), ParseDouble(parts[1], "grid bound"),
                ParseInt(parts[2], "grid steps")};
  if (!(axis.lo > 0.0) || !(axis.hi >= axis.lo) || axis.steps < 1) {
    throw Error(ErrorKind::kInvalidInput, "grid axis needs 0 < LO <= HI and STEPS >= 1");
  }
  return axis;
}

std::vector<double> AxisValues(const AxisSpec& axis) {
  return LogSpace(axis.lo, axis.hi, axis.steps);
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
    case ErrorKind::kInvalidInput:
      return kExitIo;
    case ErrorKind::kDegenerate:
    case ErrorKind::kDivergence:
      return kExitDegenerate;
    case ErrorKind::kOracleFailure:
      return kExitViolation;
  }
  return kExitIo;
}

std::pair<AxisSpec, AxisSpec> ParseGrid(const std::string& text) {
  const auto axes = Split(text, ',');
  if (axes.size() != 2) throw Error(ErrorKind::kInvalidInput, "grid must be two comma-separated axes");
  return {ParseAxis(axes[0]), ParseAxis(axes[1])};
}

std::pair<int, int> ParseDimRange(const std::string& text) {
  const auto parts = Split(text, ':');
  std::pair<int, int> range;
  if (parts.size() == 1) {
    range.first = range.second = ParseInt(parts[0], "dimension");
  } else if (parts.size() == 2) {
    range = {ParseInt(parts[0], "dimension"), ParseInt(parts[1], "dimension")};
  } else {
    throw Error(ErrorKind::kInvalidInput, "dimension range must be LO:HI");
  }
  if (range.first < 1 || range.second < range.first) {
    throw Error(ErrorKind::kInvalidInput, "dimension range needs 1 <= LO <= HI");
  }
  return range;
}

int RunEquilibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const Matrix a = MakeMatrix(cfg);
    EquilibrationOptions options;
    options.p = cfg.p;
    options.eps = cfg.eps;
    options.max_iter = cfg.max_iter;
    Equilibration result;
    if (cfg.method == "ruiz") {
      result = Ruiz(a, options);
    } else if (cfg.method == "sinkhorn") {
      result = SinkhornKnopp(a, options);
    } else {
      throw Error(ErrorKind::kInvalidInput, "unknown method '" + cfg.method + "'");
    }
    const EquilibrationReport& report = result.report;

    OutputSet files;
    WriteVectorTo(files.Add("d1.txt"), result.scaling.d1);
    WriteVectorTo(files.Add("d2.txt"), result.scaling.d2);
    std::ostream& csv = files.Add("report.csv");
    csv << kReportHeader << '\n'
        << cfg.method << ',' << cfg.p.ToString() << ',' << a.rows() << ',' << a.cols() << ','
        << report.iterations << ',' << report.final_r1() << ',' << report.final_r2() << ','
        << report.kappa_before << ',' << report.kappa_after << ','
        << (report.converged ? "true" : "false") << '\n';
    files.Commit(cfg.output);

    out << cfg.method << ": iterations=" << report.iterations << " r1=" << report.final_r1()
        << " r2=" << report.final_r2() << " kappa_before=" << report.kappa_before
        << " kappa_after=" << report.kappa_after
        << " converged=" << (report.converged ? "true" : "false") << '\n';
    return kExitOk;
  });
}

int RunSolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const GraphFormProblem problem = MakeProblem(cfg, cfg.seed);
    const ScalingPlan plan = MakePlan(cfg, problem.a, err);
    const SolveTrace trace = SolveGraphForm(problem, plan, MakeSolverConfig(cfg));

    OutputSet files;
    std::ostream& csv = files.Add("trace.csv");
    csv << kTraceHeader << '\n';
    for (int k = 0; k < trace.iterations; ++k) {
      csv << k + 1 << ',' << trace.objective[k] << ',' << trace.primal_residual[k] << ','
          << trace.dual_residual[k] << ',' << trace.primal_residual_unscaled[k] << ','
          << trace.dual_residual_unscaled[k] << '\n';
    }
    WriteVectorTo(files.Add("x.txt"), trace.x);
    WriteVectorTo(files.Add("y.txt"), trace.y);
    std::ostream& summary = files.Add("summary.csv");
    summary << kSummaryHeader << '\n'
            << problem.meta.kind << ',' << problem.rows() << ',' << problem.cols() << ','
            << problem.meta.seed << ','
            << (plan.equilibration.d1.isOnes() && plan.equilibration.d2.isOnes() ? "false"
                                                                                 : "true")
            << ',' << plan.gamma << ',' << trace.final_plan.alpha << ','
            << trace.final_plan.beta << ',' << trace.iterations << ','
            << SolveStatusName(trace.status) << ',' << trace.final_objective << ','
            << trace.refactor_count << ',' << trace.adaptations << '\n';
    files.Commit(cfg.output);

    out << "status=" << SolveStatusName(trace.status) << " iterations=" << trace.iterations
        << " objective=" << trace.final_objective << '\n';
    return kExitOk;
  });
}

int RunSweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const int trials = cfg.trials > 0 ? cfg.trials : 1;
    std::pair<AxisSpec, AxisSpec> axes;
    if (cfg.grid) {
      axes = *cfg.grid;
    } else if (cfg.gen == "lp") {
      axes = {{0.02, 50.0, 9}, {0.02, 50.0, 9}};
    } else {
      axes = {{0.01, 100.0, 9}, {0.01, 100.0, 9}};
    }
    const std::vector<double> scaling = AxisValues(axes.first);
    const std::vector<double> step = AxisValues(axes.second);
    const SolverConfig config = MakeSolverConfig(cfg);

    const std::size_t cells = scaling.size() * step.size();
    std::vector<double> iterations(cells, 0.0), objective(cells, 0.0);
    std::vector<int> converged(cells, 0);
    double gamma_sum = 0.0;
    OutputSet files;
    std::ostream& per_trial = files.Add("sweep_trials.csv");
    per_trial << kSweepTrialsHeader << '\n';
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
      const GraphFormProblem problem = MakeProblem(cfg, seed);
      const ScalingPlan base = MakePlan(cfg, problem.a, err);
      gamma_sum += base.gamma;
      SweepGrid grid{scaling, step};
      if (cfg.step_in_gamma) {
        for (double& s : grid.step) s *= base.gamma;
      }
      const SweepTable table = Sweep(problem, base, grid, config);
      for (std::size_t i = 0; i < cells; ++i) {
        const SweepCell& cell = table.cells[i];
        iterations[i] += cell.iterations;
        objective[i] += cell.final_objective;
        converged[i] += cell.status == SolveStatus::kConverged;
        per_trial << t << ',' << seed << ',' << cell.scaling << ',' << cell.step << ','
                  << base.gamma << ',' << cell.iterations << ',' << SolveStatusName(cell.status)
                  << ',' << cell.final_objective << '\n';
      }
    }
    double best = std::numeric_limits<double>::infinity();
    for (double& it : iterations) {
      it /= trials;
      best = std::min(best, it);
    }
    std::ostream& csv = files.Add("sweep.csv");
    csv << kSweepHeader << '\n';
    for (std::size_t i = 0; i < cells; ++i) {
      csv << scaling[i / step.size()] << ',' << step[i % step.size()] << ','
          << gamma_sum / trials << ',' << iterations[i] << ','
          << (converged[i] == trials ? "converged" : "maxiter") << ','
          << objective[i] / trials << ',' << (iterations[i] == best ? "true" : "false") << ','
          << converged[i] << ',' << trials << '\n';
    }
    files.Commit(cfg.output);
    out << "cells=" << cells << " trials=" << trials << " min_mean_iterations=" << best << '\n';
    return kExitOk;
  });
}

int RunCompareConsensus(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    RunConfig lasso = cfg;
    if (lasso.input.empty()) lasso.gen = "lasso";
    const GraphFormProblem problem = MakeProblem(lasso, cfg.seed);
    if (problem.g.kind() != FunctionKind::kL1 ||
        problem.f.kind() != FunctionKind::kHalfSquaredDeviation) {
      throw Error(ErrorKind::kInvalidInput, "compare-consensus needs a lasso instance");
    }
    const Eigen::Index n = problem.cols();
    double rho_star = 0.0;
    Vector equilibrated;
    try {
      rho_star = OptimalScalarRho(problem.a);
      equilibrated = EquilibrateGramInverse(problem.a, cfg.eps);
    } catch (const Error& e) {
      throw Error(ErrorKind::kDegenerate, e.what());
    }
    const std::array<std::string, 3> names = {"ones", "sqrt_rho_star", "gram_inverse_equilibrated"};
    const std::array<Vector, 3> preconditioners = {
        Vector::Ones(n), Vector::Constant(n, std::sqrt(rho_star)), equilibrated};
    ConsensusOptions options;
    options.tol = cfg.tol;
    options.max_iter = cfg.max_iter;
    std::array<ConsensusTrace, 3> traces;
    ParallelFor(3, DefaultThreadCount(), [&](std::size_t i) {
      traces[i] = SolveConsensus(
          {problem.a, problem.f.data(), problem.g, preconditioners[i]}, options);
    });

    OutputSet files;
    std::ostream& csv = files.Add("comparison.csv");
    csv << kComparisonHeader << '\n';
    for (std::size_t i = 0; i < 3; ++i) {
      csv << names[i] << ',' << traces[i].iterations << ',' << SolveStatusName(traces[i].status)
          << ',' << traces[i].objective_history.back() << ','
          << ConvergenceRateBound(problem.a, preconditioners[i]) << ',' << rho_star << '\n';
    }
    files.Commit(cfg.output);

    const bool ordered = traces[0].iterations >= traces[1].iterations &&
                         traces[1].iterations >= traces[2].iterations;
    out << "iterations: ones=" << traces[0].iterations
        << " sqrt_rho_star=" << traces[1].iterations
        << " gram_inverse_equilibrated=" << traces[2].iterations << " rho_star=" << rho_star
        << '\n'
        << "ordering ones >= sqrt_rho_star >= gram_inverse_equilibrated: "
        << (ordered ? "holds" : "does not hold") << '\n';
    return kExitOk;
  });
}

int RunVerify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    VerifySummary summary;
    if (!cfg.input.empty()) {
      const Matrix a = ReadMatrixMarket(cfg.input);
      if (a.rows() != a.cols()) throw Error(ErrorKind::kInvalidInput, "verify needs a square matrix");
      CheckMatrix(a);
      std::mt19937_64 rng(cfg.seed);
      for (int kind = 0; kind < 2; ++kind) {
        const LemmaTrial trial = kind == 0 ? CheckColumnScalingBounds(a, cfg.samples, rng)
                                           : CheckSpdBound(a, cfg.samples, rng);
        ++summary.trials;
        if (trial.skipped) ++summary.skipped;
        if (trial.violation && !summary.first_violation) summary.first_violation = trial.violation;
      }
      if (summary.skipped > 0) {
        out << "skipped: input is numerically singular (kappa > 1e10); bounds not checked\n";
      }
    } else {
      const int trials = cfg.trials > 0 ? cfg.trials : 100;
      summary = VerifyBounds(trials, cfg.dim_lo, cfg.dim_hi, cfg.samples, cfg.seed);
    }

    OutputSet files;
    files.Add("verify.csv") << kVerifyHeader << '\n'
                            << summary.trials << ',' << summary.skipped << ','
                            << (summary.first_violation ? 1 : 0) << '\n';
    if (summary.first_violation) {
      const LemmaViolation& v = *summary.first_violation;
      WriteMatrixMarket(files.Add("counterexample.mtx"), v.matrix);
      WriteVectorTo(files.Add("counterexample_diagonal.txt"), v.diagonal);
      files.Add("counterexample.txt") << "bound=" << v.bound << "\nlhs=" << v.lhs
                                      << "\nrhs=" << v.rhs << '\n';
    }
    files.Commit(cfg.output);

    out << "checked=" << summary.trials << " skipped=" << summary.skipped << '\n';
    if (summary.first_violation) {
      const LemmaViolation& v = *summary.first_violation;
      err << "violation: " << v.bound << " lhs=" << v.lhs << " rhs=" << v.rhs
          << "; counterexample written to " << cfg.output << '\n';
      return kExitViolation;
    }
    return kExitOk;
  });
}

}  // namespace eqadmm
