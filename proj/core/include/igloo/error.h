// Copyright 2026 The igloo-kit Authors
//
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

#ifndef IGLOO_ERROR_H_
#define IGLOO_ERROR_H_

#include <stdexcept>
#include <string>

namespace igloo {

enum class ErrorCode {
  kBudgetExceeded,
  kBoundExceeded,
  kEmptySet,
  kGuardDependsOnInput,
  kInvalidRing,
  kUniverseNotClosed,
  kMonitorViolation,
  kStepLimit,
  kIllTyped,
  kConfig,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace igloo

#endif  // IGLOO_ERROR_H_
