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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "eqadmm/commands.h"

namespace {

constexpr const char* kFooter = R"(Exit codes:
  0  success (non-convergence is reported in the output, not an error)
  1  property violation (verify)
  2  I/O or usage error
  3  degenerate input (zero rows/columns, rank deficiency, divergence)

Output files (in the -o directory, written only on success):
  equilibrate        d1.txt, d2.txt, report.csv
  solve              trace.csv, summary.csv, x.txt, y.txt
  sweep              sweep.csv (mean over trials), sweep_trials.csv
  compare-consensus  comparison.csv
  verify             verify.csv; on violation also counterexample.mtx,
                     counterexample_diagonal.txt, counterexample.txt

CSV headers:
  report.csv         method,p,m,n,iterations,r1,r2,kappa_before,kappa_after,converged
  trace.csv          iteration,objective,primal_residual,dual_residual,
                     primal_residual_unscaled,dual_residual_unscaled
  summary.csv        kind,m,n,seed,equilibrated,gamma,alpha,beta,iterations,status,
                     final_objective,refactor_count,adaptations
  sweep.csv          scaling,step,gamma,iterations,status,final_objective,is_minimum,
                     converged_trials,trials
  sweep_trials.csv   trial,seed,scaling,step,gamma,iterations,status,final_objective
  comparison.csv     preconditioner,iterations,status,final_objective,rate_bound,rho_star
  verify.csv         trials,skipped,violations

Sweep axes: scaling is ||DAE|| = alpha*beta*gamma, step is beta/alpha (times
gamma with --step-unit gamma). status is converged or maxiter; failed cells
count as max-iter in the mean.

EQADMM_THREADS caps the worker pool used by sweep, verify and
compare-consensus.)";

}  // namespace

int main(int argc, char** argv) {
  eqadmm::RunConfig cfg;
  CLI::App app{"Diagonal equilibration and preconditioned ADMM"};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string p_text = "2";
  std::string adaptive = "off";
  std::string grid_text;
  std::string dim_text;
  std::string step_unit = "absolute";
  bool no_equilibration = false;

  app.add_option("--input", cfg.input,
                 "MatrixMarket file (equilibrate, verify) or problem directory (solve, sweep, "
                 "compare-consensus)");
  app.add_option("--gen", cfg.gen, "Generate the input instead of reading it")
      ->check(CLI::IsMember({"gaussian", "lasso", "lp"}));
  app.add_option("-m", cfg.m, "Rows of generated instances")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-n", cfg.n, "Columns of generated instances")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("-p", p_text, "Equilibration norm: a number >= 1 or inf")
      ->capture_default_str();
  app.add_option("--eps", cfg.eps, "Equilibration tolerance")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--method", cfg.method, "Equilibration algorithm")
      ->check(CLI::IsMember({"ruiz", "sinkhorn"}))->capture_default_str();
  app.add_option("--tol", cfg.tol, "Relative stopping tolerance")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-iter", cfg.max_iter, "Iteration cap")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--grid", grid_text, "Sweep grid LO:HI:STEPS,LO:HI:STEPS (scaling, step)");
  app.add_option("--step-unit", step_unit, "Unit of the sweep step axis")
      ->check(CLI::IsMember({"absolute", "gamma"}))->capture_default_str();
  app.add_option("--trials", cfg.trials,
                 "Trials (sweep: seeds averaged, default 1; verify: default 100)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--target-norm", cfg.target_norm, "||DAE|| for the scaling plan")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--rho0", cfg.rho0, "Initial beta/alpha")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--adaptive", adaptive, "Residual-balancing beta/alpha")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  app.add_flag("--no-equilibration", no_equilibration, "Use D = alpha I, E = beta I");
  app.add_option("--col-scale", cfg.col_scale,
                 "Multiply generated columns by 10^U[-d,d]")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--dim", dim_text, "verify: dimension range LO:HI (default 5:20)");
  app.add_option("--samples", cfg.samples, "verify: random diagonals per matrix")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("-o", cfg.output, "Output directory")->capture_default_str();

  auto* equilibrate = app.add_subcommand("equilibrate", "Equilibrate a matrix");
  auto* solve = app.add_subcommand("solve", "Solve a graph-form problem by graph projection splitting");
  auto* sweep = app.add_subcommand("sweep", "Iteration counts over a (scaling, step) grid");
  auto* compare = app.add_subcommand(
      "compare-consensus", "Consensus ADMM on lasso with F = 1, sqrt(rho*) 1, equilibrated");
  auto* verify = app.add_subcommand("verify", "Check the column and SPD scaling bounds");
  for (auto* sub : {equilibrate, solve, sweep, compare, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    cfg.p = eqadmm::NormOrder::Parse(p_text);
    cfg.adaptive = adaptive == "on";
    cfg.equilibrate = !no_equilibration;
    cfg.step_in_gamma = step_unit == "gamma";
    if (!grid_text.empty()) cfg.grid = eqadmm::ParseGrid(grid_text);
    if (!dim_text.empty()) std::tie(cfg.dim_lo, cfg.dim_hi) = eqadmm::ParseDimRange(dim_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? eqadmm::kExitOk : eqadmm::kExitIo;
  } catch (const eqadmm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return eqadmm::ExitCodeFor(e.kind());
  }

  if (*equilibrate) return eqadmm::RunEquilibrate(cfg, std::cout, std::cerr);
  if (*solve) return eqadmm::RunSolve(cfg, std::cout, std::cerr);
  if (*sweep) return eqadmm::RunSweep(cfg, std::cout, std::cerr);
  if (*compare) return eqadmm::RunCompareConsensus(cfg, std::cout, std::cerr);
  return eqadmm::RunVerify(cfg, std::cout, std::cerr);
}
