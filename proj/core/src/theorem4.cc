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

#include "igloo/heap/theorem4.h"

#include <algorithm>
#include <iterator>

#include "igloo/heap/canonical.h"
#include "igloo/heap/heap.h"

namespace igloo {

namespace {

bool runs_without_chaos(const Heap& start, const ActionTrace& tau,
                        const Typing& typing) {
  for (const auto& hs : heap_execute(start, tau, typing)) {
    if (!hs.is_bottom()) return true;
  }
  return false;
}

ActionTraceSet difference(const ActionTraceSet& a, const ActionTraceSet& b) {
  ActionTraceSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.begin()));
  return out;
}

}  // namespace

ActionTraceSet canonical_traces(const Process& p, const Typing& typing,
                                std::size_t depth, std::size_t position_bound) {
  GmodLimits limits;
  limits.max_position = position_bound;
  limits.max_actions = depth;
  const auto actions = typing.all_actions();
  ActionTraceSet out{ActionTrace{}};
  // A run of tau only consumes permissions scheduled at proper prefixes of
  // tau, so membership of tau.a implies membership of tau.
  std::vector<ActionTrace> frontier{ActionTrace{}};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<ActionTrace> next;
    for (const auto& tau : frontier) {
      for (const auto& a : actions) {
        ActionTrace ext = tau;
        ext.push_back(a);
        const Heap h = cmod_tok(p, rho_wit(ext, typing), limits);
        if (runs_without_chaos(h, ext, typing)) {
          out.insert(ext);
          next.push_back(std::move(ext));
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Theorem4Verdict theorem4_oracle(const Process& p, const Typing& typing,
                                const Theorem4Options& options) {
  const std::size_t bound = options.position_bound != 0
                                ? options.position_bound
                                : default_position_bound(options.depth);
  Theorem4Verdict v;
  v.process_traces = enumerate_process_traces(p, typing, options.depth);
  v.canonical_traces = canonical_traces(p, typing, options.depth, bound);
  v.only_process = difference(v.process_traces, v.canonical_traces);
  v.only_canonical = difference(v.canonical_traces, v.process_traces);

  std::vector<InputSchedule> schedules{InputSchedule::Pick(typing)};
  for (std::size_t k = 0; k < options.extra_schedules; ++k) {
    schedules.push_back(InputSchedule::Random(typing, options.seed * 7919 + k));
  }
  GmodLimits truncated;
  truncated.max_position = bound;
  truncated.max_actions = options.depth;
  GmodLimits full;
  full.max_position = bound;
  for (const auto& rho : schedules) {
    const Heap h = cmod_tok(p, rho, truncated);
    for (const auto& tau : v.process_traces) {
      if (heap_execute(h, tau, typing).empty()) {
        v.schedule_misses.push_back({rho.name(), tau});
      }
    }
    v.model_checks.emplace_back(
        rho.name(), assert_sat(cmod(p, rho, full), emb(p, Place(), typing),
                               typing, options.sat_budget));
  }

  bool unknown = false;
  bool failed = !v.only_process.empty() || !v.only_canonical.empty() ||
                !v.schedule_misses.empty();
  for (const auto& [name, sat] : v.model_checks) {
    failed = failed || sat == Sat::kFalse;
    unknown = unknown || sat == Sat::kUnknown;
  }
  v.status = failed    ? Status::kFail
             : unknown ? Status::kBudgetExceeded
                       : Status::kPass;
  return v;
}

nlohmann::json Theorem4Verdict::to_json() const {
  auto traces = [](const ActionTraceSet& ts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : ts) arr.push_back(action_trace_to_string(t));
    return arr;
  };
  nlohmann::json misses = nlohmann::json::array();
  for (const auto& m : schedule_misses) {
    misses.push_back(
        {{"schedule", m.schedule}, {"trace", action_trace_to_string(m.trace)}});
  }
  nlohmann::json models = nlohmann::json::object();
  for (const auto& [name, sat] : model_checks) models[name] = sat_name(sat);
  return {{"status", status_name(status)},
          {"process_trace_count", process_traces.size()},
          {"canonical_trace_count", canonical_traces.size()},
          {"only_process", traces(only_process)},
          {"only_canonical", traces(only_canonical)},
          {"schedule_misses", misses},
          {"model_checks", models}};
}

}  // namespace igloo
