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

#ifndef IGLOO_KERNEL_EVENT_SYSTEM_H_
#define IGLOO_KERNEL_EVENT_SYSTEM_H_

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "igloo/event.h"
#include "igloo/value.h"

namespace igloo {

template <class S>
struct Step {
  Event event;
  S target;

  auto operator<=>(const Step&) const = default;
  bool operator==(const Step&) const = default;
};

// A labelled transition system given by its successor function and its
// initial states. Successor lists are returned sorted and deduplicated.
template <class S>
class EventSystem {
 public:
  using State = S;
  using SuccessorFn = std::function<std::vector<Step<S>>(const S&)>;

  EventSystem() = default;
  EventSystem(SuccessorFn fn, std::vector<S> initial)
      : fn_(std::make_shared<const SuccessorFn>(std::move(fn))),
        initial_(std::move(initial)) {
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()),
                   initial_.end());
  }

  std::vector<Step<S>> successors(const S& s) const {
    std::vector<Step<S>> out = (*fn_)(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const std::vector<S>& initial() const { return initial_; }

  EventSystem with_initial(std::vector<S> initial) const {
    EventSystem out = *this;
    out.initial_ = std::move(initial);
    return out;
  }

 private:
  std::shared_ptr<const SuccessorFn> fn_;
  std::vector<S> initial_;
};

// Adds the stutter self-loop (skip, s) to every state.
template <class S>
EventSystem<S> with_stutter(const EventSystem<S>& es) {
  return EventSystem<S>(
      [es](const S& s) {
        std::vector<Step<S>> out = es.successors(s);
        out.push_back({skip_event(), s});
        return out;
      },
      es.initial());
}

template <class S>
bool has_stutter_at(const EventSystem<S>& es, const S& s) {
  for (const auto& st : es.successors(s)) {
    if (is_skip(st.event) && st.target == s) return true;
  }
  return false;
}

// A parameterized event with a finite parameter domain.
template <class S>
struct GuardedEvent {
  std::string name;
  std::vector<std::vector<Value>> domain;
  std::function<bool(const S&, const std::vector<Value>&)> guard;
  std::function<S(const S&, const std::vector<Value>&)> update;
};

template <class S>
struct GuardedEventSystem {
  std::vector<GuardedEvent<S>> events;
  std::vector<S> initial;

  // The induced system: (s, e(p), U(s, p)) whenever G(s, p), plus skip.
  EventSystem<S> to_event_system() const {
    auto events_copy =
        std::make_shared<const std::vector<GuardedEvent<S>>>(events);
    return EventSystem<S>(
        [events_copy](const S& s) {
          std::vector<Step<S>> out;
          out.push_back({skip_event(), s});
          for (const auto& ev : *events_copy) {
            for (const auto& p : ev.domain) {
              if (ev.guard(s, p)) out.push_back({Event{ev.name, p}, ev.update(s, p)});
            }
          }
          return out;
        },
        initial);
  }
};

struct TraceProperty {
  std::string name;
  std::function<bool(const Trace&)> accepts;
};

inline TraceProperty accept_all() {
  return {"true", [](const Trace&) { return true; }};
}

// All traces of length <= depth from the given initial states.
template <class S>
TraceSet enumerate_traces(const EventSystem<S>& es, const std::vector<S>& init,
                          std::size_t depth) {
  TraceSet out;
  if (init.empty()) return out;
  std::map<Trace, std::set<S>> level;
  level[Trace{}] = std::set<S>(init.begin(), init.end());
  for (std::size_t d = 0;; ++d) {
    for (const auto& [t, states] : level) out.insert(t);
    if (d == depth) break;
    std::map<Trace, std::set<S>> next;
    for (const auto& [t, states] : level) {
      for (const auto& s : states) {
        for (auto& st : es.successors(s)) {
          Trace ext = t;
          ext.push_back(std::move(st.event));
          next[std::move(ext)].insert(std::move(st.target));
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

template <class S>
TraceSet enumerate_traces(const EventSystem<S>& es, std::size_t depth) {
  return enumerate_traces(es, es.initial(), depth);
}

struct PropertyVerdict {
  bool holds = true;
  std::optional<Trace> counterexample;
};

// Checks every trace up to depth; a counterexample is shortest and then
// lexicographically least.
template <class S>
PropertyVerdict satisfies(const EventSystem<S>& es, const std::vector<S>& init,
                          const TraceProperty& prop, std::size_t depth) {
  if (init.empty()) return {};
  std::map<Trace, std::set<S>> level;
  level[Trace{}] = std::set<S>(init.begin(), init.end());
  for (std::size_t d = 0;; ++d) {
    for (const auto& [t, states] : level) {
      if (!prop.accepts(t)) return {false, t};
    }
    if (d == depth) break;
    std::map<Trace, std::set<S>> next;
    for (const auto& [t, states] : level) {
      for (const auto& s : states) {
        for (auto& st : es.successors(s)) {
          Trace ext = t;
          ext.push_back(std::move(st.event));
          next[std::move(ext)].insert(std::move(st.target));
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return {};
}

template <class S>
PropertyVerdict satisfies(const EventSystem<S>& es, const TraceProperty& prop,
                          std::size_t depth) {
  return satisfies(es, es.initial(), prop, depth);
}

// As satisfies, but stutter self-loops are not explored. Equivalent for
// properties that are insensitive to inserting skip events.
template <class S>
PropertyVerdict satisfies_modulo_stutter(const EventSystem<S>& es,
                                         const TraceProperty& prop,
                                         std::size_t depth) {
  if (es.initial().empty()) return {};
  std::map<Trace, std::set<S>> level;
  level[Trace{}] = std::set<S>(es.initial().begin(), es.initial().end());
  for (std::size_t d = 0;; ++d) {
    for (const auto& [t, states] : level) {
      if (!prop.accepts(t)) return {false, t};
    }
    if (d == depth) break;
    std::map<Trace, std::set<S>> next;
    for (const auto& [t, states] : level) {
      for (const auto& s : states) {
        for (auto& st : es.successors(s)) {
          if (is_skip(st.event) && st.target == s) continue;
          Trace ext = t;
          ext.push_back(std::move(st.event));
          next[std::move(ext)].insert(std::move(st.target));
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return {};
}

// Trace sets of a prefix-closed family: true iff every non-empty trace has its
// immediate prefix in the set.
inline bool is_prefix_closed(const TraceSet& ts) {
  for (const auto& t : ts) {
    if (t.empty()) continue;
    if (!ts.count(Trace(t.begin(), t.end() - 1))) return false;
  }
  return true;
}

}  // namespace igloo

#endif  // IGLOO_KERNEL_EVENT_SYSTEM_H_
