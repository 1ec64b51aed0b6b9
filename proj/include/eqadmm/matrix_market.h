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

// MatrixMarket (ASCII, real) exchange plus plain-text vectors, one value per
// line.

#ifndef EQADMM_MATRIX_MARKET_H_
#define EQADMM_MATRIX_MARKET_H_

#include <iosfwd>
#include <string>

#include "eqadmm/matrix.h"

namespace eqadmm {

enum class MarketFormat { kArray, kCoordinate };

// Accepts `%%MatrixMarket matrix {array|coordinate} {real|integer}
// {general|symmetric|skew-symmetric}`. Throws kIo on malformed input.
Matrix ReadMatrixMarket(std::istream& in);
Matrix ReadMatrixMarket(const std::string& path);

void WriteMatrixMarket(std::ostream& out, const Matrix& a,
                       MarketFormat format = MarketFormat::kArray);
void WriteMatrixMarket(const std::string& path, const Matrix& a,
                       MarketFormat format = MarketFormat::kArray);

Vector ReadVector(std::istream& in);
Vector ReadVector(const std::string& path);
void WriteVector(std::ostream& out, const Vector& v);
void WriteVector(const std::string& path, const Vector& v);

}  // namespace eqadmm

#endif  // EQADMM_MATRIX_MARKET_H_
