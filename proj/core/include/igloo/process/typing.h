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

#ifndef IGLOO_PROCESS_TYPING_H_
#define IGLOO_PROCESS_TYPING_H_

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/event.h"
#include "igloo/value.h"

namespace igloo {

// An I/O action bio(out, in).
struct Action {
  std::string bio;
  Value out;
  Value in;

  auto operator<=>(const Action&) const = default;
  bool operator==(const Action&) const = default;

  std::string to_string() const;
};

using ActionTrace = std::vector<Action>;
using ActionTraceSet = std::set<ActionTrace>;

// Actions embed into events as bio(out, in).
Event to_event(const Action& a);
Action to_action(const Event& e);
Trace to_event_trace(const ActionTrace& t);
TraceSet to_event_traces(const ActionTraceSet& ts);
std::string action_trace_to_string(const ActionTrace& t);

void to_json(nlohmann::json& j, const Action& a);
void from_json(const nlohmann::json& j, Action& a);

// Input typing per I/O operation. Each declared operation has a finite
// output domain, used wherever outputs must be enumerated, and a non-empty
// input set per output (a default plus optional per-output overrides).
class Typing {
 public:
  // Throws std::invalid_argument if inputs is empty.
  Typing& declare(const std::string& bio, std::vector<Value> outputs,
                  std::vector<Value> inputs);
  Typing& set_inputs(const std::string& bio, const Value& out,
                     std::vector<Value> inputs);

  bool declares(const std::string& bio) const { return ops_.count(bio) > 0; }
  std::vector<std::string> bios() const;
  const std::vector<Value>& outputs(const std::string& bio) const;
  bool in_output_domain(const std::string& bio, const Value& out) const;

  // Ty(bio, out); throws std::out_of_range for an undeclared operation.
  const std::vector<Value>& ty(const std::string& bio, const Value& out) const;
  bool well_typed(const Action& a) const;
  bool well_typed(const ActionTrace& t) const;
  // Minimum of Ty(bio, out) under the value ordering.
  const Value& pick(const std::string& bio, const Value& out) const;

  // Every well-typed action over the declared output domains.
  std::vector<Action> all_actions() const;

 private:
  struct Op {
    std::vector<Value> outputs;
    std::vector<Value> inputs;
    std::map<Value, std::vector<Value>> overrides;
  };
  std::map<std::string, Op> ops_;
};

}  // namespace igloo

#endif  // IGLOO_PROCESS_TYPING_H_
