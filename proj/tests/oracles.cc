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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "Eigen/Dense"

namespace eqadmm::testing {

Matrix RandomGaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = normal(rng);
  }
  return a;
}

Vector RandomGaussianVector(Eigen::Index n, std::uint64_t seed) {
  return RandomGaussian(n, 1, seed).col(0);
}

Vector OracleSingularValues(const Matrix& a) {
  Matrix s = a.rows() >= a.cols() ? Matrix(a.transpose() * a) : Matrix(a * a.transpose());
  const Eigen::Index n = s.rows();
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    }
    if (off <= 1e-34 * s.squaredNorm()) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (s(p, q) == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double skp = s(k, p);
          const double skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double spk = s(p, k);
          const double sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  Vector sigma(n);
  for (Eigen::Index i = 0; i < n; ++i) sigma(i) = std::sqrt(std::max(s(i, i), 0.0));
  std::sort(sigma.data(), sigma.data() + n, std::greater<>());
  return sigma;
}

std::pair<Vector, Vector> BlockFormulaProjection(const Matrix& m, const Vector& x,
                                                 const Vector& y) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Matrix k(cols + rows, cols + rows);
  k << Matrix::Identity(cols, cols), m.transpose(), m, -Matrix::Identity(rows, rows);
  Matrix right = Matrix::Zero(cols + rows, cols + rows);
  right.topLeftCorner(cols, cols) = Matrix::Identity(cols, cols);
  right.topRightCorner(cols, rows) = m.transpose();
  Vector stacked(cols + rows);
  stacked << x, y;
  const Vector out = k.inverse() * (right * stacked);
  return {out.head(cols), out.tail(rows)};
}

double GoldenSectionMinimize(const std::function<double(double)>& f, double lo,
                             double hi, double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

Matrix BruteForceSinkhorn(const Matrix& nonnegative, int iterations) {
  Matrix b = nonnegative;
  for (int k = 0; k < iterations; ++k) {
    for (Eigen::Index i = 0; i < b.rows(); ++i) b.row(i) /= b.row(i).sum();
    for (Eigen::Index j = 0; j < b.cols(); ++j) b.col(j) /= b.col(j).sum();
  }
  return b;
}

namespace {

Vector Shrink(const Vector& v, double kappa) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(i) = std::max(0.0, v(i) - kappa) - std::max(0.0, -v(i) - kappa);
  }
  return out;
}

}  // namespace

ScalarAdmmRun TextbookLassoAdmm(const Matrix& a, const Vector& b, double lambda,
                                double rho, int iterations) {
  const Eigen::Index n = a.cols();
  const Matrix system = a.transpose() * a + rho * Matrix::Identity(n, n);
  const Eigen::PartialPivLU<Matrix> lu(system);
  const Vector atb = a.transpose() * b;
  Vector x = Vector::Zero(n), z = Vector::Zero(n), u = Vector::Zero(n);
  ScalarAdmmRun run;
  for (int k = 0; k < iterations; ++k) {
    x = lu.solve(atb + rho * (z - u));
    z = Shrink(x + u, lambda / rho);
    u += x - z;
    run.x.push_back(x);
    run.z.push_back(z);
  }
  return run;
}

std::vector<Vector> TextbookLassoGraphSplitting(const Matrix& a, const Vector& b,
                                                double lambda, double rho,
                                                int iterations) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(n, n) + a.transpose() * a);
  Vector x = Vector::Zero(n), y = Vector::Zero(m);
  Vector xt = Vector::Zero(n), yt = Vector::Zero(m);
  Vector ux = Vector::Zero(n), uy = Vector::Zero(m);
  std::vector<Vector> out;
  for (int k = 0; k < iterations; ++k) {
    // prox_{g/rho} and prox_{f/rho}
    xt = Shrink(x - ux, lambda / rho);
    yt = (rho * (y - uy) + b) / (1.0 + rho);
    x = lu.solve(xt + ux + a.transpose() * (yt + uy));
    y = a * x;
    ux += xt - x;
    uy += yt - y;
    out.push_back(xt);
  }
  return out;
}

}  // namespace eqadmm::testing
