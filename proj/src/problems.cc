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

#include "eqadmm/problems.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "eqadmm/errors.h"
#include "eqadmm/matrix_market.h"

namespace eqadmm {
namespace {

constexpr int kOracleMaxIterations = 1000000;

Vector SoftThreshold(const Vector& v, const Vector& threshold) {
  return v.cwiseSign().cwiseProduct((v.cwiseAbs() - threshold).cwiseMax(0.0));
}

Matrix GaussianMatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = normal(rng);
  }
  return a;
}

Vector GaussianVector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

void CheckDims(Eigen::Index m, Eigen::Index n) {
  if (m < 1 || n < 1) {
    throw Error(ErrorKind::kInvalidInput, "problem dimensions must be positive");
  }
}

}  // namespace

const char* FunctionKindName(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::kHalfSquaredDeviation:
      return "half_sq_dev";
    case FunctionKind::kL1:
      return "l1";
    case FunctionKind::kIndicatorLeq:
      return "indicator_leq";
    case FunctionKind::kLinear:
      return "linear";
    case FunctionKind::kZero:
      return "zero";
  }
  return "unknown";
}

FunctionKind ParseFunctionKind(const std::string& name) {
  for (FunctionKind kind :
       {FunctionKind::kHalfSquaredDeviation, FunctionKind::kL1,
        FunctionKind::kIndicatorLeq, FunctionKind::kLinear, FunctionKind::kZero}) {
    if (name == FunctionKindName(kind)) return kind;
  }
  throw Error(ErrorKind::kInvalidInput, "unknown function kind '" + name + "'");
}

SeparableFunction SeparableFunction::HalfSquaredDeviation(Vector b) {
  const Eigen::Index n = b.size();
  return SeparableFunction(FunctionKind::kHalfSquaredDeviation, n, 0.0, std::move(b));
}

SeparableFunction SeparableFunction::L1(double lambda, Eigen::Index n) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::kInvalidInput, "l1 weight must be finite and nonnegative");
  }
  return SeparableFunction(FunctionKind::kL1, n, lambda, Vector());
}

SeparableFunction SeparableFunction::IndicatorLeq(Vector b) {
  const Eigen::Index n = b.size();
  return SeparableFunction(FunctionKind::kIndicatorLeq, n, 0.0, std::move(b));
}

SeparableFunction SeparableFunction::Linear(Vector c) {
  const Eigen::Index n = c.size();
  return SeparableFunction(FunctionKind::kLinear, n, 0.0, std::move(c));
}

SeparableFunction SeparableFunction::Zero(Eigen::Index n) {
  return SeparableFunction(FunctionKind::kZero, n, 0.0, Vector());
}

void SeparableFunction::CheckSize(const Vector& v, const char* what) const {
  if (v.size() != size_) {
    throw Error(ErrorKind::kInvalidInput,
                std::string(what) + " has length " + std::to_string(v.size()) +
                    ", function expects " + std::to_string(size_));
  }
}

SeparableFunction SeparableFunction::Composed(const Vector& inner) const {
  CheckSize(inner, "inner scale");
  if (!inner.allFinite() || inner.minCoeff() <= 0.0) {
    throw Error(ErrorKind::kInvalidInput, "inner scale must be positive");
  }
  SeparableFunction out = *this;
  out.inner_ = inner_.size() == 0 ? inner : Vector(inner_.cwiseProduct(inner));
  return out;
}

double SeparableFunction::Evaluate(const Vector& x_in) const {
  CheckSize(x_in, "argument");
  const Vector x = inner_.size() == 0 ? x_in : Vector(inner_.cwiseProduct(x_in));
  switch (kind_) {
    case FunctionKind::kHalfSquaredDeviation:
      return 0.5 * (x - data_).squaredNorm();
    case FunctionKind::kL1:
      return lambda_ * x.lpNorm<1>();
    case FunctionKind::kIndicatorLeq: {
      const Vector slack = 1e-9 * data_.cwiseAbs().cwiseMax(1.0);
      return ((x - data_).array() <= slack.array()).all() ? 0.0 : kInfinity;
    }
    case FunctionKind::kLinear:
      return data_.dot(x);
    case FunctionKind::kZero:
      return 0.0;
  }
  return 0.0;
}

Vector SeparableFunction::ScaledProx(const Vector& scale_in, const Vector& v) const {
  CheckSize(scale_in, "scale");
  CheckSize(v, "prox argument");
  if (!scale_in.allFinite() || (scale_in.array() <= 0.0).any()) {
    throw Error(ErrorKind::kInvalidInput, "prox scale must be positive");
  }
  const Vector s = inner_.size() == 0 ? scale_in : Vector(scale_in.cwiseProduct(inner_));
  switch (kind_) {
    case FunctionKind::kHalfSquaredDeviation:
      // d/du: s (s u - b) + u - v = 0.
      return (v + s.cwiseProduct(data_)).cwiseQuotient(
          (s.array().square() + 1.0).matrix());
    case FunctionKind::kL1:
      return SoftThreshold(v, lambda_ * s);
    case FunctionKind::kIndicatorLeq:
      return v.cwiseMin(data_.cwiseQuotient(s));
    case FunctionKind::kLinear:
      return v - s.cwiseProduct(data_);
    case FunctionKind::kZero:
      return v;
  }
  return v;
}

Vector SeparableFunction::WeightedProx(const Vector& weights, const Vector& v) const {
  CheckSize(weights, "weights");
  if (!weights.allFinite() || (weights.array() <= 0.0).any()) {
    throw Error(ErrorKind::kInvalidInput, "prox weights must be positive");
  }
  // z = u / sqrt(w) turns the weighted problem into a scaled one.
  const Vector root = weights.cwiseSqrt();
  return ScaledProx(root.cwiseInverse(), root.cwiseProduct(v)).cwiseQuotient(root);
}

void GraphFormProblem::Validate() const {
  CheckMatrix(a, "constraint matrix");
  if (f.size() != a.rows() || g.size() != a.cols()) {
    throw Error(ErrorKind::kInvalidInput,
                "f must have length m and g length n for an m x n matrix");
  }
}

Matrix GenerateGaussian(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  CheckDims(m, n);
  std::mt19937_64 rng(seed);
  return GaussianMatrix(m, n, rng);
}

GraphFormProblem GenerateLasso(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  CheckDims(m, n);
  std::mt19937_64 rng(seed);
  Matrix a = GaussianMatrix(m, n, rng);

  const Eigen::Index nnz =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::lround(0.1 * n)));
  std::vector<Eigen::Index> index(n);
  std::iota(index.begin(), index.end(), 0);
  std::shuffle(index.begin(), index.end(), rng);
  std::normal_distribution<double> normal;
  Vector x0 = Vector::Zero(n);
  for (Eigen::Index k = 0; k < nnz; ++k) x0(index[k]) = normal(rng);

  Vector b = a * x0 + 0.1 * GaussianVector(m, rng);
  const double lambda = 0.1 * (a.transpose() * b).cwiseAbs().maxCoeff();

  GraphFormProblem problem{std::move(a), SeparableFunction::HalfSquaredDeviation(b),
                           SeparableFunction::L1(lambda, n), {}};
  problem.meta.kind = "lasso";
  problem.meta.seed = seed;
  problem.meta.lambda = lambda;
  problem.meta.x0 = std::move(x0);
  return problem;
}

GraphFormProblem GenerateLp(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  CheckDims(m, n);
  std::mt19937_64 rng(seed);
  Matrix a = GaussianMatrix(m, n, rng);
  Vector x0 = GaussianVector(n, rng);
  Vector slack = GaussianVector(m, rng).cwiseAbs();
  // Strictly positive slack keeps x0 interior.
  slack.array() += 1e-3;
  Vector b = a * x0 + slack;
  std::uniform_real_distribution<double> uniform(0.1, 1.0);
  Vector mu(m);
  for (Eigen::Index i = 0; i < m; ++i) mu(i) = uniform(rng);
  Vector c = -(a.transpose() * mu);

  GraphFormProblem problem{std::move(a), SeparableFunction::IndicatorLeq(std::move(b)),
                           SeparableFunction::Linear(std::move(c)), {}};
  problem.meta.kind = "lp";
  problem.meta.seed = seed;
  problem.meta.x0 = std::move(x0);
  problem.meta.mu = std::move(mu);
  return problem;
}

GraphFormProblem ScaleColumns(GraphFormProblem problem, double decades,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> exponent(-decades, decades);
  Vector scale(problem.cols());
  for (Eigen::Index j = 0; j < scale.size(); ++j) scale(j) = std::pow(10.0, exponent(rng));
  problem.a = problem.a * scale.asDiagonal();
  if (problem.meta.kind == "lasso") {
    const Vector& b = problem.f.data();
    problem.meta.lambda = 0.1 * (problem.a.transpose() * b).cwiseAbs().maxCoeff();
    problem.g = SeparableFunction::L1(problem.meta.lambda, problem.cols());
  }
  if (problem.meta.x0.size() == scale.size()) {
    problem.meta.x0 = problem.meta.x0.cwiseQuotient(scale);
  }
  return problem;
}

namespace {

void WriteFunction(const SeparableFunction& fn, const std::filesystem::path& path) {
  if (fn.data().size() > 0) WriteVector(path.string(), fn.data());
}

SeparableFunction ReadFunction(FunctionKind kind, Eigen::Index n, double lambda,
                               const std::filesystem::path& path) {
  switch (kind) {
    case FunctionKind::kHalfSquaredDeviation:
      return SeparableFunction::HalfSquaredDeviation(ReadVector(path.string()));
    case FunctionKind::kL1:
      return SeparableFunction::L1(lambda, n);
    case FunctionKind::kIndicatorLeq:
      return SeparableFunction::IndicatorLeq(ReadVector(path.string()));
    case FunctionKind::kLinear:
      return SeparableFunction::Linear(ReadVector(path.string()));
    case FunctionKind::kZero:
      return SeparableFunction::Zero(n);
  }
  return SeparableFunction::Zero(n);
}

}  // namespace

void SaveProblem(const GraphFormProblem& problem, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create '" + dir + "': " + ec.message());
  const fs::path root(dir);
  WriteMatrixMarket((root / "A.mtx").string(), problem.a);
  WriteFunction(problem.f, root / "f.txt");
  WriteFunction(problem.g, root / "g.txt");
  if (problem.meta.x0.size() > 0) WriteVector((root / "x0.txt").string(), problem.meta.x0);
  if (problem.meta.mu.size() > 0) WriteVector((root / "mu.txt").string(), problem.meta.mu);
  std::ofstream meta(root / "meta.txt");
  meta << std::setprecision(17);
  meta << "kind=" << problem.meta.kind << '\n'
       << "seed=" << problem.meta.seed << '\n'
       << "m=" << problem.rows() << '\n'
       << "n=" << problem.cols() << '\n'
       << "f=" << FunctionKindName(problem.f.kind()) << '\n'
       << "g=" << FunctionKindName(problem.g.kind()) << '\n'
       << "f_lambda=" << problem.f.lambda() << '\n'
       << "g_lambda=" << problem.g.lambda() << '\n';
  if (!std::isnan(problem.meta.lambda)) meta << "lambda=" << problem.meta.lambda << '\n';
  if (!meta) throw Error(ErrorKind::kIo, "cannot write meta.txt in '" + dir + "'");
}

GraphFormProblem LoadProblem(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  std::ifstream meta_in(root / "meta.txt");
  if (!meta_in) throw Error(ErrorKind::kIo, "cannot open '" + (root / "meta.txt").string() + "'");
  std::map<std::string, std::string> meta;
  std::string line;
  while (std::getline(meta_in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) throw Error(ErrorKind::kIo, "meta.txt lacks '" + key + "'");
    return it->second;
  };
  Matrix a = ReadMatrixMarket((root / "A.mtx").string());
  const FunctionKind f_kind = ParseFunctionKind(get("f"));
  const FunctionKind g_kind = ParseFunctionKind(get("g"));
  auto number = [&](const std::string& key) {
    return meta.count(key) ? std::stod(meta[key]) : 0.0;
  };
  GraphFormProblem problem{
      a, ReadFunction(f_kind, a.rows(), number("f_lambda"), root / "f.txt"),
      ReadFunction(g_kind, a.cols(), number("g_lambda"), root / "g.txt"), {}};
  problem.meta.kind = get("kind");
  problem.meta.seed = std::stoull(get("seed"));
  if (meta.count("lambda")) problem.meta.lambda = std::stod(meta["lambda"]);
  if (fs::exists(root / "x0.txt")) problem.meta.x0 = ReadVector((root / "x0.txt").string());
  if (fs::exists(root / "mu.txt")) problem.meta.mu = ReadVector((root / "mu.txt").string());
  problem.Validate();
  return problem;
}

double LassoObjective(const Matrix& a, const Vector& b, double lambda, const Vector& x) {
  return 0.5 * (a * x - b).squaredNorm() + lambda * x.lpNorm<1>();
}

namespace {

double SubgradientGap(const Vector& grad, double lambda, const Vector& x) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double r = x(i) != 0.0 ? std::abs(grad(i) + lambda * (x(i) > 0 ? 1.0 : -1.0))
                                 : std::max(std::abs(grad(i)) - lambda, 0.0);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

double LassoOptimalityResidual(const Matrix& a, const Vector& b, double lambda,
                               const Vector& x) {
  return SubgradientGap(a.transpose() * (a * x - b), lambda, x);
}

LassoSolution LassoOracle(const Matrix& a, const Vector& b, double lambda, double tol) {
  CheckMatrix(a);
  if (b.size() != a.rows()) throw Error(ErrorKind::kInvalidInput, "b has wrong length");
  LassoSolution out;
  out.x = Vector::Zero(a.cols());
  double step_inverse = 1.0;
  Vector residual = -b;  // A x - b
  double smooth = 0.5 * residual.squaredNorm();
  for (int k = 0; k < kOracleMaxIterations; ++k) {
    const Vector grad = a.transpose() * residual;
    if (SubgradientGap(grad, lambda, out.x) <= tol) {
      out.iterations = k;
      out.objective = smooth + lambda * out.x.lpNorm<1>();
      return out;
    }
    // Let the step grow again after a backtracking phase.
    step_inverse *= 0.9;
    while (true) {
      const Vector candidate =
          SoftThreshold(out.x - grad / step_inverse,
                        Vector::Constant(a.cols(), lambda / step_inverse));
      const Vector delta = candidate - out.x;
      const Vector next_residual = a * candidate - b;
      const double next_smooth = 0.5 * next_residual.squaredNorm();
      if (next_smooth <= smooth + grad.dot(delta) + 0.5 * step_inverse * delta.squaredNorm() +
                             1e-15 * std::abs(smooth)) {
        out.x = candidate;
        residual = next_residual;
        smooth = next_smooth;
        break;
      }
      step_inverse *= 2.0;
    }
  }
  throw Error(ErrorKind::kOracleFailure, "lasso oracle did not converge in 1e6 iterations");
}

LassoSolution LassoOracle(const GraphFormProblem& problem, double tol) {
  if (problem.f.kind() != FunctionKind::kHalfSquaredDeviation ||
      problem.g.kind() != FunctionKind::kL1) {
    throw Error(ErrorKind::kInvalidInput, "lasso oracle needs a lasso-kind problem");
  }
  return LassoOracle(problem.a, problem.f.data(), problem.g.lambda(), tol);
}

}  // namespace eqadmm
