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

#include <map>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/refinement.h"

namespace igloo {

Trace map_trace(const Mediator& pi, const Trace& tau) {
  Trace out;
  out.reserve(tau.size());
  for (const auto& e : tau) out.push_back(pi(e));
  return out;
}

TraceSet map_traces(const Mediator& pi, const TraceSet& ts) {
  TraceSet out;
  for (const auto& t : ts) out.insert(map_trace(pi, t));
  return out;
}

TraceProperty preimage_property(const Mediator& pi, const TraceProperty& prop) {
  return {prop.name + " o " + pi.name,
          [pi, prop](const Trace& t) { return prop.accepts(map_trace(pi, t)); }};
}

nlohmann::json to_json_report(const RefinementVerdict& v) {
  nlohmann::json j{{"status", status_name(v.status)},
                   {"pairs_explored", v.pairs_explored}};
  if (v.status == Status::kFail) {
    j["failed_condition"] = v.failed_condition;
    j["abstract_state"] = v.abstract_state;
    j["concrete_state"] = v.concrete_state;
    if (v.concrete_event) j["concrete_event"] = *v.concrete_event;
    if (v.abstract_event) j["abstract_event"] = *v.abstract_event;
    j["counterexample"] = v.concrete_trace;
  }
  return j;
}

SyncMap interleaving() {
  return {"interleave", [](const Event& a, const Event& b) -> std::optional<Event> {
            if (is_skip(b)) return a;
            if (is_skip(a)) return b;
            return std::nullopt;
          }};
}

Event tag_with_index(const Value& index, const Event& e) {
  Event out{e.name, {index}};
  out.params.insert(out.params.end(), e.params.begin(), e.params.end());
  return out;
}

TraceSet compose_trace_sets(const TraceSet& t1, const TraceSet& t2,
                            const SyncMap& chi) {
  std::map<std::size_t, std::vector<const Trace*>> by_len;
  for (const auto& t : t2) by_len[t.size()].push_back(&t);
  TraceSet out;
  for (const auto& a : t1) {
    auto it = by_len.find(a.size());
    if (it == by_len.end()) continue;
    for (const Trace* b : it->second) {
      Trace combined;
      combined.reserve(a.size());
      bool ok = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        auto e = chi(a[i], (*b)[i]);
        if (!e) {
          ok = false;
          break;
        }
        combined.push_back(std::move(*e));
      }
      if (ok) out.insert(std::move(combined));
    }
  }
  return out;
}

}  // namespace igloo
