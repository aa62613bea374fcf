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

#include "igloo/monitor/monitor.h"

namespace igloo {

std::string Verdict::to_string() const {
  switch (reason) {
    case DenyReason::kNone:
      return "PERMIT";
    case DenyReason::kNoEnabledGuard:
      return "DENY(no enabled guard)";
    case DenyReason::kIllTypedInput:
      return "DENY(ill-typed input)";
    case DenyReason::kNoPermissionAtToken:
      return "DENY(no permission at token)";
  }
  return "DENY";
}

const char* backend_name(Backend b) {
  return b == Backend::kHeap ? "heap" : "event-system";
}

void to_json(nlohmann::json& j, const MonitorRecord& r) {
  j = nlohmann::json{{"seq", r.seq},
                     {"kind", r.kind},
                     {"bio", r.action.bio},
                     {"out", r.action.out},
                     {"in", r.kind == "request" ? nlohmann::json() : nlohmann::json(r.action.in)},
                     {"verdict", r.verdict.to_string()},
                     {"state_hash", r.state_hash}};
}

}  // namespace igloo
