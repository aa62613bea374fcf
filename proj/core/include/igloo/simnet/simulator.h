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

#ifndef IGLOO_SIMNET_SIMULATOR_H_
#define IGLOO_SIMNET_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/kernel/event_system.h"
#include "igloo/kernel/verdict.h"
#include "igloo/simnet/channel.h"
#include "igloo/simnet/node.h"
#include "igloo/simnet/trace_log.h"

namespace igloo {

struct ScriptedCrash {
  int node = -1;
  std::size_t step = 0;
  bool operator==(const ScriptedCrash&) const = default;
};

// Fail-stop faults: scripted permanent crashes, and a perfect failure
// detector that tells every other node after a per-observer delay.
struct FaultPlan {
  std::vector<ScriptedCrash> crashes;
  std::size_t max_detect_delay = 10;
  // Fixed delays per observer; observers not listed draw uniformly from
  // [0, max_detect_delay].
  std::map<int, std::size_t> detect_delay;

  bool operator==(const FaultPlan&) const = default;
};

void to_json(nlohmann::json& j, const FaultPlan& f);
FaultPlan fault_plan_from_json(const nlohmann::json& j);

enum class StopReason { kQuiescent, kStepLimit, kMonitorViolation };

const char* stop_reason_name(StopReason r);

struct ViolationInfo {
  std::size_t step = 0;
  int node = -1;
  Value index;
  Action action;
  std::string reason;
};

struct GlobalVerdict {
  std::string name;
  bool holds = true;
  std::optional<std::size_t> first_violation_step;
};

// View of the environment handed to online checks after every step.
struct SimView {
  std::size_t step = 0;
  const ChannelModel& channel;
  const std::set<int>& crashed;
};

// Returns the names of the global checks violated after a step; `event` is
// the model event of the step, if any.
using OnlineCheck =
    std::function<std::vector<std::string>(const SimView&, const std::optional<Event>& event)>;

struct SendRoute {
  int to = -1;
  Value payload;
};

struct ReceiveRoute {
  int at = -1;
  std::optional<int> from;
};

// Everything the scheduler needs to run one decomposed system.
struct SimSetup {
  std::vector<std::shared_ptr<SimNode>> nodes;
  ChannelModel channel = ChannelModel::Fifo();
  std::function<SendRoute(const SimNode&, const Value& out)> route_send;
  std::function<ReceiveRoute(const SimNode&, const Value& out)> route_receive;
  EventMap gamma;
  std::vector<std::string> global_checks;
  OnlineCheck online;
  // Called once at the end to fill counts and final verdicts.
  std::function<void(struct SimResult&)> finish;
};

struct SimResult {
  TraceLog log;
  StopReason stop = StopReason::kStepLimit;
  std::size_t steps = 0;
  std::optional<ViolationInfo> violation;  // first monitor denial
  std::size_t monitor_violations = 0;
  std::map<int, std::size_t> node_violations;
  std::vector<GlobalVerdict> globals;
  std::map<std::string, std::size_t> counts;

  bool globals_hold() const;
  // {steps, violations, elects, replies, ...}, stop reason and verdicts.
  nlohmann::json summary() const;
};

// Single-threaded scheduler. Every step applies due crashes, then picks one
// runnable node uniformly and performs its next activity: a queued I/O
// request (routed through the node's monitor), a failure notice, or a tick.
// A due notice is handed over instead of a queued receive, which the program
// is expected to issue again.
// Deterministic for a fixed seed. In strict mode the first denial stops the
// run with kMonitorViolation before the action takes effect; in audit mode
// denied actions are logged and still take effect.
SimResult run_setup(SimSetup& setup, const FaultPlan& faults, std::uint64_t seed,
                    std::size_t max_steps, MonitorMode mode = MonitorMode::kStrict);

struct ReplayVerdict {
  Status status = Status::kPass;
  std::optional<std::size_t> stuck_at;  // log record index
  std::optional<Event> stuck_event;
  std::size_t events_replayed = 0;
};

nlohmann::json to_json_report(const ReplayVerdict& v);

// Replays the model events of a log in `model`, tracking the set of states
// consistent with the prefix. Stutter self-loops are ignored.
template <class S>
ReplayVerdict replay_against_model(const TraceLog& log, const EventSystem<S>& model,
                                   const EventMap& gamma) {
  ReplayVerdict v;
  std::set<S> frontier(model.initial().begin(), model.initial().end());
  for (auto& [pos, event] : model_events(log, gamma)) {
    std::set<S> next;
    for (const auto& s : frontier) {
      for (auto& st : model.successors(s)) {
        if (st.event == event) next.insert(std::move(st.target));
      }
    }
    if (next.empty()) {
      v.status = Status::kFail;
      v.stuck_at = pos;
      v.stuck_event = event;
      return v;
    }
    frontier = std::move(next);
    ++v.events_replayed;
  }
  return v;
}

struct GlobalPropertyVerdict {
  bool holds = true;
  std::optional<std::size_t> violated_at;  // log record index
};

// Checks prop on the model-event trace of a log, prefix by prefix.
GlobalPropertyVerdict check_global(const TraceLog& log, const TraceProperty& prop,
                                   const EventMap& gamma);

}  // namespace igloo

#endif  // IGLOO_SIMNET_SIMULATOR_H_
