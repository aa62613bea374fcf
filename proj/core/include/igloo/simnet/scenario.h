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

#ifndef IGLOO_SIMNET_SCENARIO_H_
#define IGLOO_SIMNET_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/monitor/monitor.h"
#include "igloo/protocols/auth.h"
#include "igloo/protocols/leader.h"
#include "igloo/protocols/replication.h"
#include "igloo/simnet/simulator.h"

namespace igloo {

inline constexpr const char* kSchemaVersion = "igloo-kit/1";

enum class ProtocolKind { kLeader, kReplication, kAuth };

const char* protocol_name(ProtocolKind p);

struct SimSettings {
  ChannelKind channel = ChannelKind::kLossySet;
  double loss = 0.0;
  std::size_t steps = 2000;
  Backend backend = Backend::kEventSystem;
  MonitorMode mode = MonitorMode::kStrict;
  // Program variant: "default", or a deliberately faulty one
  // ("unbuffered" for leader election).
  std::string program = "default";
};

struct Scenario {
  std::string name;
  ProtocolKind protocol = ProtocolKind::kLeader;
  RingConfig ring;
  ReplConfig repl;
  AuthConfig auth;
  SimSettings sim;
  FaultPlan faults;
  std::size_t depth = 5;  // default bound for model checks
  // Bound for checks that explore the recomposed system, when it must be
  // smaller than `depth`.
  std::optional<std::size_t> interface_depth;
};

// Throws CONFIG on malformed input. Missing sections take defaults.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);

// Names of the embedded scenarios: leader3, leader4, repl-3s-1c, auth-2a.
std::vector<std::string> builtin_scenario_names();
std::optional<nlohmann::json> builtin_scenario(const std::string& name);

// A built-in name (with or without a .json suffix) or a path to a file.
Scenario load_scenario(const std::string& name_or_path);

// The scheduler inputs for a scenario: monitored programs, channel, routes,
// the map from log records to recomposed-model events, and online checks.
SimSetup make_sim_setup(const Scenario& sc);

SimResult run_sim(const Scenario& sc, const FaultPlan& faults, std::uint64_t seed,
                  std::size_t max_steps);
inline SimResult run_sim(const Scenario& sc, std::uint64_t seed) {
  return run_sim(sc, sc.faults, seed, sc.sim.steps);
}

EventMap scenario_gamma(const Scenario& sc);

// Replays a log in the recomposed interface model of the scenario.
ReplayVerdict replay_scenario_log(const Scenario& sc, const TraceLog& log);

// The scenario's global trace property over recomposed-model events:
// the preimage of leader uniqueness under the composed mediator, the
// preimage of injective agreement, or backup consistency at every reply.
TraceProperty scenario_global_property(const Scenario& sc);

}  // namespace igloo

#endif  // IGLOO_SIMNET_SCENARIO_H_
