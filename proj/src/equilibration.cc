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

#include "eqadmm/equilibration.h"

#include <cmath>
#include <limits>
#include <string>

#include "eqadmm/errors.h"
#include "eqadmm/metrics.h"

namespace eqadmm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckNoZeroLines(const Matrix& a) {
  const Vector rows = a.cwiseAbs().rowwise().maxCoeff();
  const Vector cols = a.cwiseAbs().colwise().maxCoeff().transpose();
  if (rows.minCoeff() == 0.0 || cols.minCoeff() == 0.0) {
    throw Error(ErrorKind::kDegenerate,
                "matrix has a zero row or column; equilibration is undefined");
  }
}

void GuardDivergence(const Vector& d, const char* which, int iteration) {
  if (!d.allFinite() || d.minCoeff() < kMinScale || d.maxCoeff() > kMaxScale) {
    throw Error(ErrorKind::kDivergence,
                std::string(which) + " left [1e-30, 1e30] at iteration " +
                    std::to_string(iteration));
  }
}

bool WithinTolerance(double r1, double r2, double eps) {
  return r1 - 1.0 <= eps && r2 - 1.0 <= eps;
}

void CheckOptions(const EquilibrationOptions& options) {
  if (!(options.eps > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "eps must be positive");
  }
  if (options.max_iter < 0) {
    throw Error(ErrorKind::kInvalidInput, "max_iter must be nonnegative");
  }
}

void FillCondition(const Matrix& a, const DiagonalScaling& scaling,
                   const EquilibrationOptions& options,
                   EquilibrationReport& report) {
  if (!options.compute_condition) {
    report.kappa_before = kNaN;
    report.kappa_after = kNaN;
    return;
  }
  report.kappa_before = ConditionNumber(a);
  report.kappa_after = ConditionNumber(scaling.Apply(a));
}

double Ratio(const Vector& v) { return v.maxCoeff() / v.minCoeff(); }

}  // namespace

DiagonalScaling DiagonalScaling::Identity(Eigen::Index m, Eigen::Index n) {
  return {Vector::Ones(m), Vector::Ones(n)};
}

void DiagonalScaling::Validate() const {
  auto ok = [](const Vector& d) {
    return d.size() > 0 && d.allFinite() && d.minCoeff() > 0.0;
  };
  if (!ok(d1) || !ok(d2)) {
    throw Error(ErrorKind::kInvalidInput,
                "diagonal scaling entries must be positive and finite");
  }
}

Matrix DiagonalScaling::Apply(const Matrix& a) const {
  if (a.rows() != d1.size() || a.cols() != d2.size()) {
    throw Error(ErrorKind::kInvalidInput, "scaling does not match matrix shape");
  }
  return ScaleMatrix(d1, a, d2);
}

double EquilibrationReport::final_r1() const {
  return r1_history.empty() ? kNaN : r1_history.back();
}

double EquilibrationReport::final_r2() const {
  return r2_history.empty() ? kNaN : r2_history.back();
}

Equilibration SinkhornKnopp(const Matrix& a, const EquilibrationOptions& options) {
  CheckMatrix(a);
  CheckOptions(options);
  CheckNoZeroLines(a);
  const bool max_abs = options.p.is_infinite();
  const double p = options.p.value();
  const Matrix n_mat = max_abs ? Matrix(a.cwiseAbs()) : Matrix(a.cwiseAbs().array().pow(p));

  // Row and column aggregates of diag(e1) N diag(e2), without the outer
  // factors: sums for finite p, maxima for p = inf.
  auto row_agg = [&](const Vector& e2) -> Vector {
    if (max_abs) return (n_mat * e2.asDiagonal()).rowwise().maxCoeff();
    return n_mat * e2;
  };
  auto col_agg = [&](const Vector& e1) -> Vector {
    if (max_abs) return (e1.asDiagonal() * n_mat).colwise().maxCoeff().transpose();
    return n_mat.transpose() * e1;
  };
  // Ratios of row/column l_p norms of B are p-th roots of the ratios of
  // these aggregates.
  auto to_norm_ratio = [&](double agg_ratio) {
    return max_abs ? agg_ratio : std::pow(agg_ratio, 1.0 / p);
  };

  Vector e1 = Vector::Ones(a.rows());
  Vector e2 = Vector::Ones(a.cols());
  Equilibration out;
  EquilibrationReport& report = out.report;

  double r1 = to_norm_ratio(Ratio(row_agg(e2)));
  double r2 = to_norm_ratio(Ratio(col_agg(e1)));
  report.r1_history.push_back(r1);
  report.r2_history.push_back(r2);
  report.converged = WithinTolerance(r1, r2, options.eps);
  while (!report.converged && report.iterations < options.max_iter) {
    e1 = row_agg(e2).cwiseInverse();
    GuardDivergence(e1, "row scaling", report.iterations + 1);
    e2 = col_agg(e1).cwiseInverse();
    GuardDivergence(e2, "column scaling", report.iterations + 1);
    ++report.iterations;
    r1 = to_norm_ratio(Ratio(e1.cwiseProduct(row_agg(e2))));
    r2 = to_norm_ratio(Ratio(e2.cwiseProduct(col_agg(e1))));
    report.r1_history.push_back(r1);
    report.r2_history.push_back(r2);
    report.converged = WithinTolerance(r1, r2, options.eps);
  }

  if (max_abs) {
    out.scaling = {e1, e2};
  } else {
    out.scaling = {e1.array().pow(1.0 / p).matrix(), e2.array().pow(1.0 / p).matrix()};
  }
  GuardDivergence(out.scaling.d1, "row scaling", report.iterations);
  GuardDivergence(out.scaling.d2, "column scaling", report.iterations);
  FillCondition(a, out.scaling, options, report);
  return out;
}

Equilibration Ruiz(const Matrix& a, const EquilibrationOptions& options) {
  CheckMatrix(a);
  CheckOptions(options);
  CheckNoZeroLines(a);
  const double m = static_cast<double>(a.rows());
  const double n = static_cast<double>(a.cols());
  const double correction =
      options.p.is_infinite() ? 1.0 : std::pow(m / n, 1.0 / (2.0 * options.p.value()));

  Equilibration out;
  out.scaling = DiagonalScaling::Identity(a.rows(), a.cols());
  EquilibrationReport& report = out.report;
  Matrix b = a;
  Vector row_norms = RowNorms(b, options.p);
  Vector col_norms = ColNorms(b, options.p);
  report.r1_history.push_back(Ratio(row_norms));
  report.r2_history.push_back(Ratio(col_norms));
  report.converged =
      WithinTolerance(report.r1_history.back(), report.r2_history.back(), options.eps);
  while (!report.converged && report.iterations < options.max_iter) {
    out.scaling.d1.array() /= row_norms.array().sqrt();
    out.scaling.d2.array() *= correction / col_norms.array().sqrt();
    ++report.iterations;
    GuardDivergence(out.scaling.d1, "row scaling", report.iterations);
    GuardDivergence(out.scaling.d2, "column scaling", report.iterations);
    b = out.scaling.Apply(a);
    row_norms = RowNorms(b, options.p);
    col_norms = ColNorms(b, options.p);
    const double r1 = Ratio(row_norms);
    const double r2 = Ratio(col_norms);
    report.r1_history.push_back(r1);
    report.r2_history.push_back(r2);
    report.converged = WithinTolerance(r1, r2, options.eps);
  }
  FillCondition(a, out.scaling, options, report);
  return out;
}

double EquilibrationResidual(const Matrix& a, const DiagonalScaling& scaling,
                             NormOrder p) {
  CheckMatrix(a);
  scaling.Validate();
  const Matrix b = scaling.Apply(a).cwiseAbs();
  Vector row_sums;
  Vector col_sums;
  if (p.is_infinite()) {
    row_sums = b.rowwise().maxCoeff();
    col_sums = b.colwise().maxCoeff().transpose();
  } else {
    const Matrix powered = b.array().pow(p.value()).matrix();
    row_sums = powered.rowwise().sum();
    col_sums = powered.colwise().sum().transpose();
  }
  auto deviation = [](const Vector& v) {
    const double mean = v.mean();
    if (mean == 0.0) return kInfinity;
    return (v.array() - mean).abs().maxCoeff() / mean;
  };
  return std::max(deviation(row_sums), deviation(col_sums));
}

SymmetricEquilibration SymmetricRuiz(const Matrix& p_matrix, NormOrder p,
                                     double eps, int max_iter) {
  CheckMatrix(p_matrix, "symmetric matrix");
  if (p_matrix.rows() != p_matrix.cols()) {
    throw Error(ErrorKind::kInvalidInput, "symmetric equilibration needs a square matrix");
  }
  CheckNoZeroLines(p_matrix);
  SymmetricEquilibration out;
  out.d = Vector::Ones(p_matrix.rows());
  Vector row_norms = RowNorms(p_matrix, p);
  out.ratio = Ratio(row_norms);
  out.converged = out.ratio - 1.0 <= eps;
  while (!out.converged && out.iterations < max_iter) {
    out.d.array() /= row_norms.array().sqrt();
    ++out.iterations;
    GuardDivergence(out.d, "symmetric scaling", out.iterations);
    row_norms = RowNorms(ScaleMatrix(out.d, p_matrix, out.d), p);
    out.ratio = Ratio(row_norms);
    out.converged = out.ratio - 1.0 <= eps;
  }
  return out;
}

}  // namespace eqadmm
