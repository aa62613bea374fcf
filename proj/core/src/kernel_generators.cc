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

#include "igloo/kernel/generators.h"

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <utility>

namespace igloo {

std::vector<Event> event_alphabet(const RandomSystemParams& params) {
  std::vector<Event> out;
  for (const auto& name : params.event_names) {
    for (std::size_t p = 0; p < params.param_values; ++p) {
      out.push_back(Event{name, {Value::Int(static_cast<std::int64_t>(p))}});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EventSystem<int> random_event_system(std::uint64_t seed,
                                     const RandomSystemParams& params) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int n = 1 + static_cast<int>(rng() % params.max_states);
  const auto alphabet = event_alphabet(params);
  auto table = std::make_shared<std::vector<std::vector<Step<int>>>>(n);
  for (int s = 0; s < n; ++s) {
    if (params.stutter) (*table)[s].push_back({skip_event(), s});
    for (const auto& e : alphabet) {
      for (int t = 0; t < n; ++t) {
        if (coin(rng) < params.edge_density) (*table)[s].push_back({e, t});
      }
    }
  }
  return EventSystem<int>(
      [table](const int& s) { return (*table)[static_cast<std::size_t>(s)]; },
      {0});
}

SyncMap random_sync_map(std::uint64_t seed, const std::vector<Event>& left,
                        const std::vector<Event>& right,
                        std::size_t result_events) {
  std::mt19937_64 rng(seed);
  std::vector<Event> l = left;
  std::vector<Event> r = right;
  l.push_back(skip_event());
  r.push_back(skip_event());
  auto table = std::make_shared<std::map<std::pair<Event, Event>, Event>>();
  for (const auto& a : l) {
    for (const auto& b : r) {
      if (is_skip(a) && is_skip(b)) {
        (*table)[{a, b}] = skip_event();
      } else if (rng() % 2 == 0) {
        (*table)[{a, b}] =
            Event{"x" + std::to_string(rng() % result_events), {}};
      }
    }
  }
  return SyncMap{"random:" + std::to_string(seed),
                 [table](const Event& a, const Event& b) -> std::optional<Event> {
                   auto it = table->find({a, b});
                   if (it == table->end()) return std::nullopt;
                   return it->second;
                 }};
}

}  // namespace igloo
