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

#ifndef EQADMM_ERRORS_H_
#define EQADMM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace eqadmm {

enum class ErrorKind {
  kInvalidInput,
  // Equilibration is undefined (zero row or column).
  kDegenerate,
  // A scaling entry left [1e-30, 1e30].
  kDivergence,
  kIo,
  // The reference lasso solver hit its iteration cap.
  kOracleFailure,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eqadmm

#endif  // EQADMM_ERRORS_H_
