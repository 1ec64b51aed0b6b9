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

// Subcommands of the eqadmm command-line tool. Each returns a process exit
// code and writes its files only after all computation has succeeded.

#ifndef EQADMM_COMMANDS_H_
#define EQADMM_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "eqadmm/errors.h"
#include "eqadmm/matrix.h"

namespace eqadmm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitDegenerate = 3;

int ExitCodeFor(ErrorKind kind);

// LO:HI:STEPS, log spaced.
struct AxisSpec {
  double lo = 1.0;
  double hi = 1.0;
  int steps = 1;
};

// "LO:HI:STEPS,LO:HI:STEPS". Throws kInvalidInput on malformed text.
std::pair<AxisSpec, AxisSpec> ParseGrid(const std::string& text);

// "LO:HI", inclusive integer range.
std::pair<int, int> ParseDimRange(const std::string& text);

struct RunConfig {
  std::string input;
  // gaussian, lasso or lp; empty when --input is used.
  std::string gen;
  Eigen::Index m = 750;
  Eigen::Index n = 250;
  std::uint64_t seed = 0;
  NormOrder p = NormOrder(2.0);
  double eps = 1e-6;
  // ruiz or sinkhorn.
  std::string method = "ruiz";
  double tol = 1e-4;
  int max_iter = 100000;
  std::optional<std::pair<AxisSpec, AxisSpec>> grid;
  // 0 selects the per-command default.
  int trials = 0;
  double target_norm = 1.0;
  double rho0 = 1.0;
  bool adaptive = false;
  bool equilibrate = true;
  // Columns of generated A are multiplied by 10^{U[-d, d]}.
  double col_scale = 0.0;
  // Multiply the sweep step axis by gamma.
  bool step_in_gamma = false;
  int dim_lo = 5;
  int dim_hi = 20;
  int samples = 100;
  // Output directory.
  std::string output = ".";
};

int RunEquilibrate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int RunSolve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int RunSweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int RunCompareConsensus(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int RunVerify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// CSV headers, fixed per file.
inline constexpr const char* kReportHeader =
    "method,p,m,n,iterations,r1,r2,kappa_before,kappa_after,converged";
inline constexpr const char* kTraceHeader =
    "iteration,objective,primal_residual,dual_residual,primal_residual_unscaled,"
    "dual_residual_unscaled";
inline constexpr const char* kSummaryHeader =
    "kind,m,n,seed,equilibrated,gamma,alpha,beta,iterations,status,final_objective,"
    "refactor_count,adaptations";
inline constexpr const char* kSweepHeader =
    "scaling,step,gamma,iterations,status,final_objective,is_minimum,converged_trials,trials";
inline constexpr const char* kSweepTrialsHeader =
    "trial,seed,scaling,step,gamma,iterations,status,final_objective";
inline constexpr const char* kComparisonHeader =
    "preconditioner,iterations,status,final_objective,rate_bound,rho_star";
inline constexpr const char* kVerifyHeader = "trials,skipped,violations";

}  // namespace eqadmm

#endif  // EQADMM_COMMANDS_H_
