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

#include "igloo/event.h"

#include "igloo/error.h"

namespace igloo {

std::string Event::to_string() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].to_string();
  }
  return out + ")";
}

std::string trace_to_string(const Trace& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += is_skip(t[i]) ? std::string(kSkipName) : t[i].to_string();
  }
  return out + ">";
}

void to_json(nlohmann::json& j, const Event& e) {
  j = nlohmann::json{{"name", e.name}, {"params", e.params}};
}

void from_json(const nlohmann::json& j, Event& e) {
  e.name = j.at("name").get<std::string>();
  e.params = j.at("params").get<std::vector<Value>>();
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExceeded:
      return "BUDGET_EXCEEDED";
    case ErrorCode::kBoundExceeded:
      return "BOUND_EXCEEDED";
    case ErrorCode::kEmptySet:
      return "EMPTY_SET";
    case ErrorCode::kGuardDependsOnInput:
      return "GUARD_DEPENDS_ON_INPUT";
    case ErrorCode::kInvalidRing:
      return "INVALID_RING";
    case ErrorCode::kUniverseNotClosed:
      return "UNIVERSE_NOT_CLOSED";
    case ErrorCode::kMonitorViolation:
      return "MONITOR_VIOLATION";
    case ErrorCode::kStepLimit:
      return "STEP_LIMIT";
    case ErrorCode::kIllTyped:
      return "ILL_TYPED";
    case ErrorCode::kConfig:
      return "CONFIG";
  }
  return "UNKNOWN";
}

}  // namespace igloo
