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

// Dense matrix and vector vocabulary shared by every module.

#ifndef EQADMM_MATRIX_H_
#define EQADMM_MATRIX_H_

#include <cmath>
#include <limits>
#include <string>

#include "Eigen/Core"

namespace eqadmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Order of an entrywise vector norm. Finite orders must be >= 1; the
// max-abs norm is NormOrder::Infinity().
class NormOrder {
 public:
  explicit NormOrder(double p);
  static NormOrder Infinity() { return NormOrder(kInfinity); }

  double value() const { return p_; }
  bool is_infinite() const { return std::isinf(p_); }

  // Parses "1", "2", "inf", ...
  static NormOrder Parse(const std::string& text);
  std::string ToString() const;

  friend bool operator==(const NormOrder&, const NormOrder&) = default;

 private:
  double p_;
};

// Throws kInvalidInput unless the matrix is non-empty with finite entries.
void CheckMatrix(const Matrix& a, const char* what = "matrix");

// The l_p norm of every row / column.
Vector RowNorms(const Matrix& a, NormOrder p);
Vector ColNorms(const Matrix& a, NormOrder p);

// diag(left) * a * diag(right).
Matrix ScaleMatrix(const Vector& left, const Matrix& a, const Vector& right);

}  // namespace eqadmm

#endif  // EQADMM_MATRIX_H_
