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

#ifndef IGLOO_HEAP_THEOREM4_H_
#define IGLOO_HEAP_THEOREM4_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/heap/assertion.h"
#include "igloo/kernel/verdict.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

struct Theorem4Options {
  std::size_t depth = 3;
  std::size_t extra_schedules = 5;
  std::uint64_t seed = 1;
  // 0 selects default_position_bound(depth).
  std::size_t position_bound = 0;
  std::size_t sat_budget = kDefaultSatBudget;
};

struct ScheduleMiss {
  std::string schedule;
  ActionTrace trace;
};

struct Theorem4Verdict {
  Status status = Status::kPass;
  ActionTraceSet process_traces;
  ActionTraceSet canonical_traces;
  ActionTraceSet only_process;
  ActionTraceSet only_canonical;
  // Process traces not executable in cmod_tok for a sampled schedule.
  std::vector<ScheduleMiss> schedule_misses;
  // cmod(p, rho) |= emb(p, <>) per checked schedule.
  std::vector<std::pair<std::string, Sat>> model_checks;

  nlohmann::json to_json() const;
};

// Bounded trace equivalence between a process and its I/O specification.
// The specification side is the set of well-typed traces tau with a non-chaos
// run from cmod_tok(p, rho_wit(tau)).
Theorem4Verdict theorem4_oracle(const Process& p, const Typing& typing,
                                 const Theorem4Options& options = {});

// Canonical-side traces only, up to depth.
ActionTraceSet canonical_traces(const Process& p, const Typing& typing,
                                std::size_t depth, std::size_t position_bound);

}  // namespace igloo

#endif  // IGLOO_HEAP_THEOREM4_H_
