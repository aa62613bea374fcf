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

#ifndef IGLOO_KERNEL_GENERATORS_H_
#define IGLOO_KERNEL_GENERATORS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "igloo/event.h"
#include "igloo/kernel/composition.h"
#include "igloo/kernel/event_system.h"

namespace igloo {

struct RandomSystemParams {
  std::size_t max_states = 15;
  std::vector<std::string> event_names = {"a", "b", "c"};
  std::size_t param_values = 2;  // each event carries one integer parameter
  double edge_density = 0.08;    // per (state, event, target) triple
  bool stutter = true;           // add the skip self-loop everywhere
};

// name(p) for each name and p < param_values, in sorted order.
std::vector<Event> event_alphabet(const RandomSystemParams& params);

// A random system over states 0..n-1 with initial state 0.
EventSystem<int> random_event_system(std::uint64_t seed,
                                     const RandomSystemParams& params = {});

// A random partial map from pairs over the two alphabets (each extended with
// skip) into a fresh alphabet x0..x{k-1}; (skip, skip) maps to skip.
SyncMap random_sync_map(std::uint64_t seed, const std::vector<Event>& left,
                        const std::vector<Event>& right,
                        std::size_t result_events = 4);

}  // namespace igloo

#endif  // IGLOO_KERNEL_GENERATORS_H_
