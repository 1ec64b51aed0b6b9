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

#include "eqadmm/matrix.h"

#include <cstdlib>
#include <string>

#include "eqadmm/errors.h"

namespace eqadmm {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return "invalid input";
    case ErrorKind::kDegenerate:
      return "degenerate input";
    case ErrorKind::kDivergence:
      return "divergence";
    case ErrorKind::kIo:
      return "i/o error";
    case ErrorKind::kOracleFailure:
      return "oracle failure";
  }
  return "unknown error";
}

NormOrder::NormOrder(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorKind::kInvalidInput,
                "norm order must be >= 1, got " + std::to_string(p));
  }
}

NormOrder NormOrder::Parse(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return Infinity();
  }
  char* end = nullptr;
  const double p = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw Error(ErrorKind::kInvalidInput, "cannot parse norm order '" + text + "'");
  }
  return NormOrder(p);
}

std::string NormOrder::ToString() const {
  if (is_infinite()) return "inf";
  std::string s = std::to_string(p_);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

void CheckMatrix(const Matrix& a, const char* what) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " is empty");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::kInvalidInput,
                std::string(what) + " has non-finite entries");
  }
}

namespace {

template <typename Lines>
double LpNorm(const Lines& v, NormOrder p) {
  if (p.is_infinite()) return v.cwiseAbs().maxCoeff();
  if (p.value() == 1.0) return v.cwiseAbs().sum();
  if (p.value() == 2.0) return v.norm();
  return std::pow(v.cwiseAbs().array().pow(p.value()).sum(), 1.0 / p.value());
}

}  // namespace

Vector RowNorms(const Matrix& a, NormOrder p) {
  Vector out(a.rows());
  if (p.value() == 2.0) return a.rowwise().norm();
  for (Eigen::Index i = 0; i < a.rows(); ++i) out(i) = LpNorm(a.row(i), p);
  return out;
}

Vector ColNorms(const Matrix& a, NormOrder p) {
  Vector out(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) out(j) = LpNorm(a.col(j), p);
  return out;
}

Matrix ScaleMatrix(const Vector& left, const Matrix& a, const Vector& right) {
  return left.asDiagonal() * a * right.asDiagonal();
}

}  // namespace eqadmm
