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

#ifndef IGLOO_KERNEL_VERDICT_H_
#define IGLOO_KERNEL_VERDICT_H_

#include <cstddef>
#include <string>

namespace igloo {

inline constexpr std::size_t kDefaultNodeLimit = 1'000'000;

enum class Status { kPass, kFail, kBudgetExceeded };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::kPass:
      return "PASS";
    case Status::kFail:
      return "FAIL";
    case Status::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
  }
  return "UNKNOWN";
}

// Combines verdicts: budget exhaustion dominates failure, failure dominates
// success.
inline Status worst(Status a, Status b) {
  auto rank = [](Status s) {
    return s == Status::kPass ? 0 : s == Status::kFail ? 1 : 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

}  // namespace igloo

#endif  // IGLOO_KERNEL_VERDICT_H_
