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

#include "igloo/process/typing.h"

#include <algorithm>
#include <stdexcept>

namespace igloo {

namespace {

std::vector<Value> canonical(std::vector<Value> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

std::string Action::to_string() const {
  return bio + "(" + out.to_string() + ", " + in.to_string() + ")";
}

Event to_event(const Action& a) { return Event{a.bio, {a.out, a.in}}; }

Action to_action(const Event& e) {
  if (e.params.size() != 2) {
    throw std::invalid_argument("event is not an I/O action: " + e.to_string());
  }
  return Action{e.name, e.params[0], e.params[1]};
}

Trace to_event_trace(const ActionTrace& t) {
  Trace out;
  out.reserve(t.size());
  for (const auto& a : t) out.push_back(to_event(a));
  return out;
}

TraceSet to_event_traces(const ActionTraceSet& ts) {
  TraceSet out;
  for (const auto& t : ts) out.insert(to_event_trace(t));
  return out;
}

std::string action_trace_to_string(const ActionTrace& t) {
  std::string out = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += t[i].to_string();
  }
  return out + ">";
}

void to_json(nlohmann::json& j, const Action& a) {
  j = nlohmann::json{{"bio", a.bio}, {"out", a.out}, {"in", a.in}};
}

void from_json(const nlohmann::json& j, Action& a) {
  a.bio = j.at("bio").get<std::string>();
  a.out = j.at("out").get<Value>();
  a.in = j.at("in").get<Value>();
}

Typing& Typing::declare(const std::string& bio, std::vector<Value> outputs,
                        std::vector<Value> inputs) {
  if (inputs.empty()) {
    throw std::invalid_argument("empty input type for " + bio);
  }
  Op& op = ops_[bio];
  op.outputs = canonical(std::move(outputs));
  op.inputs = canonical(std::move(inputs));
  op.overrides.clear();
  return *this;
}

Typing& Typing::set_inputs(const std::string& bio, const Value& out,
                           std::vector<Value> inputs) {
  if (inputs.empty()) {
    throw std::invalid_argument("empty input type for " + bio);
  }
  ops_.at(bio).overrides[out] = canonical(std::move(inputs));
  return *this;
}

std::vector<std::string> Typing::bios() const {
  std::vector<std::string> out;
  for (const auto& [name, op] : ops_) out.push_back(name);
  return out;
}

const std::vector<Value>& Typing::outputs(const std::string& bio) const {
  return ops_.at(bio).outputs;
}

bool Typing::in_output_domain(const std::string& bio, const Value& out) const {
  auto it = ops_.find(bio);
  if (it == ops_.end()) return false;
  return std::binary_search(it->second.outputs.begin(), it->second.outputs.end(),
                            out);
}

const std::vector<Value>& Typing::ty(const std::string& bio,
                                     const Value& out) const {
  const Op& op = ops_.at(bio);
  auto it = op.overrides.find(out);
  return it == op.overrides.end() ? op.inputs : it->second;
}

bool Typing::well_typed(const Action& a) const {
  if (!declares(a.bio)) return false;
  const auto& inputs = ty(a.bio, a.out);
  return std::binary_search(inputs.begin(), inputs.end(), a.in);
}

bool Typing::well_typed(const ActionTrace& t) const {
  return std::all_of(t.begin(), t.end(),
                     [this](const Action& a) { return well_typed(a); });
}

const Value& Typing::pick(const std::string& bio, const Value& out) const {
  return ty(bio, out).front();
}

std::vector<Action> Typing::all_actions() const {
  std::vector<Action> out;
  for (const auto& [bio, op] : ops_) {
    for (const auto& v : op.outputs) {
      for (const auto& w : ty(bio, v)) out.push_back(Action{bio, v, w});
    }
  }
  return out;
}

}  // namespace igloo
