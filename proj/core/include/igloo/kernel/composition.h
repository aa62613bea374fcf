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

#ifndef IGLOO_KERNEL_COMPOSITION_H_
#define IGLOO_KERNEL_COMPOSITION_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igloo/event.h"
#include "igloo/kernel/event_system.h"
#include "igloo/value.h"

namespace igloo {

// Partial synchronization map; nullopt means the pair does not synchronize.
struct SyncMap {
  std::string name;
  std::function<std::optional<Event>(const Event&, const Event&)> combine;

  std::optional<Event> operator()(const Event& a, const Event& b) const {
    return combine(a, b);
  }
};

// Pure interleaving: (e, skip) -> e, (skip, e) -> e, otherwise undefined.
SyncMap interleaving();

template <class S1, class S2>
EventSystem<std::pair<S1, S2>> compose_parallel(const EventSystem<S1>& es1,
                                                const EventSystem<S2>& es2,
                                                const SyncMap& chi) {
  using P = std::pair<S1, S2>;
  std::vector<P> init;
  for (const auto& a : es1.initial()) {
    for (const auto& b : es2.initial()) init.push_back({a, b});
  }
  return EventSystem<P>(
      [es1, es2, chi](const P& s) {
        std::vector<Step<P>> out;
        const auto left = es1.successors(s.first);
        const auto right = es2.successors(s.second);
        for (const auto& l : left) {
          for (const auto& r : right) {
            if (auto e = chi(l.event, r.event)) {
              out.push_back({std::move(*e), P{l.target, r.target}});
            }
          }
        }
        return out;
      },
      std::move(init));
}

// Renames a component event when it is lifted into a family composition.
using FamilyTag = std::function<Event(const Value& index, const Event& e)>;

// Prepends the component index to the event parameters.
Event tag_with_index(const Value& index, const Event& e);
inline Event tag_identity(const Value&, const Event& e) { return e; }

template <class S>
struct FamilyMember {
  Value index;
  EventSystem<S> system;
};

// N-ary interleaving: every non-skip step moves exactly one member while the
// others stutter; skip is available when every member can stutter.
template <class S>
EventSystem<std::vector<S>> interleave_family(std::vector<FamilyMember<S>> family,
                                              FamilyTag tag = tag_with_index) {
  using V = std::vector<S>;
  std::vector<V> init{V{}};
  for (const auto& m : family) {
    std::vector<V> next;
    for (const auto& prefix : init) {
      for (const auto& s : m.system.initial()) {
        V ext = prefix;
        ext.push_back(s);
        next.push_back(std::move(ext));
      }
    }
    init = std::move(next);
  }
  auto members = std::make_shared<const std::vector<FamilyMember<S>>>(std::move(family));
  return EventSystem<V>(
      [members, tag](const V& s) {
        const std::size_t n = members->size();
        std::vector<std::vector<Step<S>>> moves(n);
        std::vector<std::vector<S>> skips(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (auto& st : (*members)[i].system.successors(s[i])) {
            if (is_skip(st.event)) {
              skips[i].push_back(std::move(st.target));
            } else {
              moves[i].push_back(std::move(st));
            }
          }
        }
        std::vector<Step<V>> out;
        for (std::size_t i = 0; i < n; ++i) {
          // Every other member must take skip at the same time.
          std::vector<V> frames{s};
          for (std::size_t j = 0; j < n && !frames.empty(); ++j) {
            if (j == i) continue;
            std::vector<V> next;
            for (const auto& f : frames) {
              for (const auto& t : skips[j]) {
                V g = f;
                g[j] = t;
                next.push_back(std::move(g));
              }
            }
            frames = std::move(next);
          }
          for (const auto& st : moves[i]) {
            for (const auto& f : frames) {
              V g = f;
              g[i] = st.target;
              out.push_back({tag((*members)[i].index, st.event), std::move(g)});
            }
          }
        }
        std::vector<V> all_skip{s};
        for (std::size_t j = 0; j < n && !all_skip.empty(); ++j) {
          std::vector<V> next;
          for (const auto& f : all_skip) {
            for (const auto& t : skips[j]) {
              V g = f;
              g[j] = t;
              next.push_back(std::move(g));
            }
          }
          all_skip = std::move(next);
        }
        for (auto& f : all_skip) out.push_back({skip_event(), std::move(f)});
        return out;
      },
      std::move(init));
}

TraceSet compose_trace_sets(const TraceSet& t1, const TraceSet& t2,
                            const SyncMap& chi);

}  // namespace igloo

#endif  // IGLOO_KERNEL_COMPOSITION_H_
