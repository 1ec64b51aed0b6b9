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

#include "eqadmm/matrix_market.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "eqadmm/errors.h"

namespace eqadmm {
namespace {

enum class Symmetry { kGeneral, kSymmetric, kSkewSymmetric };

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorKind::kIo, "malformed MatrixMarket input: " + why);
}

// Next line that is neither blank nor a comment.
bool NextDataLine(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

Matrix ReadMatrixMarket(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Malformed("empty stream");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry_name;
  header >> banner >> object >> format >> field >> symmetry_name;
  if (banner != "%%MatrixMarket" || Lower(object) != "matrix") {
    Malformed("missing '%%MatrixMarket matrix' header");
  }
  format = Lower(format);
  field = Lower(field);
  symmetry_name = Lower(symmetry_name);
  if (field != "real" && field != "integer" && field != "double") {
    Malformed("unsupported field '" + field + "'");
  }
  Symmetry symmetry = Symmetry::kGeneral;
  if (symmetry_name == "symmetric") {
    symmetry = Symmetry::kSymmetric;
  } else if (symmetry_name == "skew-symmetric") {
    symmetry = Symmetry::kSkewSymmetric;
  } else if (symmetry_name != "general") {
    Malformed("unsupported symmetry '" + symmetry_name + "'");
  }

  if (!NextDataLine(in, line)) Malformed("missing size line");
  std::istringstream size_line(line);
  long long rows = 0, cols = 0, nnz = 0;
  if (format == "coordinate") {
    if (!(size_line >> rows >> cols >> nnz)) Malformed("bad size line");
  } else if (format == "array") {
    if (!(size_line >> rows >> cols)) Malformed("bad size line");
  } else {
    Malformed("unsupported format '" + format + "'");
  }
  if (rows < 1 || cols < 1 || nnz < 0) Malformed("nonpositive dimensions");
  if (symmetry != Symmetry::kGeneral && rows != cols) {
    Malformed("symmetric storage requires a square matrix");
  }

  Matrix a = Matrix::Zero(rows, cols);
  if (format == "coordinate") {
    for (long long k = 0; k < nnz; ++k) {
      if (!NextDataLine(in, line)) Malformed("fewer entries than declared");
      std::istringstream entry(line);
      long long i = 0, j = 0;
      double value = 0.0;
      if (!(entry >> i >> j >> value)) Malformed("bad entry line '" + line + "'");
      if (i < 1 || i > rows || j < 1 || j > cols) Malformed("entry index out of range");
      a(i - 1, j - 1) += value;
      if (i != j && symmetry == Symmetry::kSymmetric) a(j - 1, i - 1) += value;
      if (i != j && symmetry == Symmetry::kSkewSymmetric) a(j - 1, i - 1) -= value;
    }
  } else {
    // Column-major; symmetric variants store the lower triangle only.
    for (long long j = 0; j < cols; ++j) {
      const long long first = symmetry == Symmetry::kGeneral ? 0
                              : symmetry == Symmetry::kSymmetric ? j
                                                                 : j + 1;
      for (long long i = first; i < rows; ++i) {
        if (!NextDataLine(in, line)) Malformed("fewer entries than declared");
        std::istringstream entry(line);
        double value = 0.0;
        if (!(entry >> value)) Malformed("bad entry line '" + line + "'");
        a(i, j) = value;
        if (i != j && symmetry == Symmetry::kSymmetric) a(j, i) = value;
        if (i != j && symmetry == Symmetry::kSkewSymmetric) a(j, i) = -value;
      }
    }
  }
  if (!a.allFinite()) Malformed("non-finite entry");
  return a;
}

Matrix ReadMatrixMarket(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadMatrixMarket(in);
}

void WriteMatrixMarket(std::ostream& out, const Matrix& a, MarketFormat format) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (format == MarketFormat::kArray) {
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) out << a(i, j) << '\n';
    }
    return;
  }
  const Eigen::Index nnz = (a.array() != 0.0).count();
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << a(i, j) << '\n';
    }
  }
}

void WriteMatrixMarket(const std::string& path, const Matrix& a, MarketFormat format) {
  std::ofstream out = OpenForWrite(path);
  WriteMatrixMarket(out, a, format);
  if (!out) throw Error(ErrorKind::kIo, "write to '" + path + "' failed");
}

Vector ReadVector(std::istream& in) {
  std::vector<double> values;
  std::string line;
  while (NextDataLine(in, line)) {
    std::istringstream entry(line);
    double value = 0.0;
    if (!(entry >> value)) {
      throw Error(ErrorKind::kIo, "bad vector line '" + line + "'");
    }
    values.push_back(value);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Vector ReadVector(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadVector(in);
}

void WriteVector(std::ostream& out, const Vector& v) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
}

void WriteVector(const std::string& path, const Vector& v) {
  std::ofstream out = OpenForWrite(path);
  WriteVector(out, v);
  if (!out) throw Error(ErrorKind::kIo, "write to '" + path + "' failed");
}

}  // namespace eqadmm
