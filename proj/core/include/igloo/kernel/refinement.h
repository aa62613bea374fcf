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

#ifndef IGLOO_KERNEL_REFINEMENT_H_
#define IGLOO_KERNEL_REFINEMENT_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/event.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/verdict.h"

namespace igloo {

// Total map from concrete to abstract events.
struct Mediator {
  std::string name;
  std::function<Event(const Event&)> map;

  Event operator()(const Event& e) const { return map(e); }
};

inline Mediator identity_mediator() {
  return {"id", [](const Event& e) { return e; }};
}

inline Mediator compose_mediators(const Mediator& outer, const Mediator& inner) {
  return {outer.name + "." + inner.name,
          [outer, inner](const Event& e) { return outer(inner(e)); }};
}

template <class SA, class SC>
struct SimulationRelation {
  std::string name;
  std::function<bool(const SA&, const SC&)> related;

  bool operator()(const SA& a, const SC& c) const { return related(a, c); }
};

Trace map_trace(const Mediator& pi, const Trace& tau);
TraceSet map_traces(const Mediator& pi, const TraceSet& ts);

// Accepts tau iff map_trace(pi, tau) is accepted by prop.
TraceProperty preimage_property(const Mediator& pi, const TraceProperty& prop);

struct RefinementVerdict {
  Status status = Status::kPass;
  int failed_condition = 0;  // 1 or 2 on failure
  nlohmann::json abstract_state;
  nlohmann::json concrete_state;
  std::optional<Event> concrete_event;
  std::optional<Event> abstract_event;
  Trace concrete_trace;  // trace leading to the violation, event included
  std::size_t pairs_explored = 0;
};

nlohmann::json to_json_report(const RefinementVerdict& v);

// Bounded forward-simulation check. Explores every related pair reachable
// within depth concrete steps, where all matching abstract successors are
// followed.
template <class SA, class SC>
RefinementVerdict check_refinement(const EventSystem<SC>& conc,
                                   const EventSystem<SA>& abs,
                                   const SimulationRelation<SA, SC>& rel,
                                   const Mediator& pi, std::size_t depth,
                                   std::size_t node_limit = kDefaultNodeLimit) {
  using Pair = std::pair<SA, SC>;
  struct Node {
    Pair pair;
    std::ptrdiff_t parent;
    Event via;
    std::size_t depth;
  };
  RefinementVerdict verdict;
  std::vector<Node> nodes;
  std::set<Pair> seen;

  auto trace_to = [&](std::ptrdiff_t i) {
    Trace t;
    for (; i >= 0 && nodes[i].parent >= 0; i = nodes[i].parent) {
      t.push_back(nodes[i].via);
    }
    return Trace(t.rbegin(), t.rend());
  };

  for (const auto& sc : conc.initial()) {
    bool found = false;
    for (const auto& sa : abs.initial()) {
      if (!rel(sa, sc)) continue;
      found = true;
      Pair p{sa, sc};
      if (seen.insert(p).second) nodes.push_back({p, -1, skip_event(), 0});
    }
    if (!found) {
      verdict.status = Status::kFail;
      verdict.failed_condition = 1;
      verdict.concrete_state = sc;
      verdict.pairs_explored = nodes.size();
      return verdict;
    }
  }

  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= depth) continue;
    const Pair current = nodes[head].pair;
    const auto abs_steps = abs.successors(current.first);
    for (const auto& cstep : conc.successors(current.second)) {
      const Event target_event = pi(cstep.event);
      bool matched = false;
      for (const auto& astep : abs_steps) {
        if (astep.event != target_event) continue;
        if (!rel(astep.target, cstep.target)) continue;
        matched = true;
        Pair p{astep.target, cstep.target};
        if (!seen.insert(p).second) continue;
        if (nodes.size() >= node_limit) {
          verdict.status = Status::kBudgetExceeded;
          verdict.pairs_explored = nodes.size();
          return verdict;
        }
        nodes.push_back({std::move(p), static_cast<std::ptrdiff_t>(head),
                         cstep.event, nodes[head].depth + 1});
      }
      if (!matched) {
        verdict.status = Status::kFail;
        verdict.failed_condition = 2;
        verdict.abstract_state = current.first;
        verdict.concrete_state = current.second;
        verdict.concrete_event = cstep.event;
        verdict.abstract_event = target_event;
        verdict.concrete_trace = trace_to(static_cast<std::ptrdiff_t>(head));
        verdict.concrete_trace.push_back(cstep.event);
        verdict.pairs_explored = nodes.size();
        return verdict;
      }
    }
  }
  verdict.pairs_explored = nodes.size();
  return verdict;
}

}  // namespace igloo

#endif  // IGLOO_KERNEL_REFINEMENT_H_
