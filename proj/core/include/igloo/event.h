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

#ifndef IGLOO_EVENT_H_
#define IGLOO_EVENT_H_

#include <compare>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/value.h"

namespace igloo {

// A labelled transition event: a name with parameter values.
struct Event {
  std::string name;
  std::vector<Value> params;

  auto operator<=>(const Event&) const = default;
  bool operator==(const Event&) const = default;

  std::string to_string() const;
};

inline constexpr const char* kSkipName = "skip";

inline Event skip_event() { return Event{kSkipName, {}}; }
inline bool is_skip(const Event& e) {
  return e.name == kSkipName && e.params.empty();
}

using Trace = std::vector<Event>;
using TraceSet = std::set<Trace>;

std::string trace_to_string(const Trace& t);

// Traces compare shortest first, then lexicographically.
struct ShortLex {
  bool operator()(const Trace& a, const Trace& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

void to_json(nlohmann::json& j, const Event& e);
void from_json(const nlohmann::json& j, Event& e);

}  // namespace igloo

#endif  // IGLOO_EVENT_H_
