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

#ifndef IGLOO_KERNEL_SEARCH_H_
#define IGLOO_KERNEL_SEARCH_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "igloo/event.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/verdict.h"

namespace igloo {

template <class S>
struct StateInvariant {
  std::string name;
  std::function<bool(const S&)> holds;
};

template <class S>
struct StepInvariant {
  std::string name;
  std::function<bool(const S&, const Event&, const S&)> holds;
};

struct SearchVerdict {
  Status status = Status::kPass;
  std::string violated;  // name of the violated invariant
  Trace counterexample;  // shortest trace reaching the violation
  std::size_t states = 0;
};

// Breadth-first exploration of the states reachable within depth steps,
// checking state invariants on every reached state and step invariants on
// every explored transition. Stutter self-loops are not explored.
template <class S>
SearchVerdict search_invariants(const EventSystem<S>& es, std::size_t depth,
                                const std::vector<StateInvariant<S>>& state_invs,
                                const std::vector<StepInvariant<S>>& step_invs,
                                std::size_t node_limit = kDefaultNodeLimit) {
  struct Node {
    S state;
    std::ptrdiff_t parent;
    Event via;
    std::size_t depth;
  };
  std::vector<Node> nodes;
  std::map<S, std::size_t> index;
  SearchVerdict verdict;

  auto trace_to = [&](std::ptrdiff_t i) {
    Trace t;
    for (; i >= 0 && nodes[i].parent >= 0; i = nodes[i].parent) {
      t.push_back(nodes[i].via);
    }
    return Trace(t.rbegin(), t.rend());
  };
  auto check_state = [&](std::size_t i) -> bool {
    for (const auto& inv : state_invs) {
      if (!inv.holds(nodes[i].state)) {
        verdict.status = Status::kFail;
        verdict.violated = inv.name;
        verdict.counterexample = trace_to(static_cast<std::ptrdiff_t>(i));
        return false;
      }
    }
    return true;
  };

  for (const auto& s : es.initial()) {
    if (index.count(s)) continue;
    index.emplace(s, nodes.size());
    nodes.push_back({s, -1, skip_event(), 0});
    if (!check_state(nodes.size() - 1)) {
      verdict.states = nodes.size();
      return verdict;
    }
  }
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    if (nodes[head].depth >= depth) continue;
    const S current = nodes[head].state;
    for (auto& st : es.successors(current)) {
      if (is_skip(st.event) && st.target == current) continue;
      for (const auto& inv : step_invs) {
        if (!inv.holds(current, st.event, st.target)) {
          verdict.status = Status::kFail;
          verdict.violated = inv.name;
          verdict.counterexample = trace_to(static_cast<std::ptrdiff_t>(head));
          verdict.counterexample.push_back(st.event);
          verdict.states = nodes.size();
          return verdict;
        }
      }
      if (index.count(st.target)) continue;
      if (nodes.size() >= node_limit) {
        verdict.status = Status::kBudgetExceeded;
        verdict.states = nodes.size();
        return verdict;
      }
      index.emplace(st.target, nodes.size());
      nodes.push_back({std::move(st.target), static_cast<std::ptrdiff_t>(head),
                       std::move(st.event), nodes[head].depth + 1});
      if (!check_state(nodes.size() - 1)) {
        verdict.states = nodes.size();
        return verdict;
      }
    }
  }
  verdict.states = nodes.size();
  return verdict;
}

// Replays a trace from the initial states, tracking all reachable states.
// Returns the index of the first event that cannot be taken, or nullopt if the
// whole trace is executable.
template <class S>
std::optional<std::size_t> first_stuck_position(const EventSystem<S>& es,
                                                const Trace& trace) {
  std::set<S> current(es.initial().begin(), es.initial().end());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::set<S> next;
    for (const auto& s : current) {
      for (auto& st : es.successors(s)) {
        if (st.event == trace[i]) next.insert(std::move(st.target));
      }
    }
    if (next.empty()) return i;
    current = std::move(next);
  }
  return std::nullopt;
}

}  // namespace igloo

#endif  // IGLOO_KERNEL_SEARCH_H_
