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

#include "igloo/simnet/scenario.h"

#include <filesystem>
#include <fstream>
#include <map>

#include "igloo/error.h"
#include "igloo/simnet/programs.h"

namespace igloo {

namespace {

using nlohmann::json;

const std::map<std::string, const char*>& builtin_sources() {
  static const std::map<std::string, const char*> sources{
      {"leader3", R"({
        "schema": "igloo-kit/1", "name": "leader3", "protocol": "leader",
        "ring": {"ids": [1, 2, 3]},
        "sim": {"channel": "lossy-set", "loss": 0.3, "steps": 2000}
      })"},
      {"leader4", R"({
        "schema": "igloo-kit/1", "name": "leader4", "protocol": "leader",
        "ring": {"ids": [1, 2, 3, 4]},
        "sim": {"channel": "lossy-set", "loss": 0.3, "steps": 2000}
      })"},
      {"repl-3s-1c", R"({
        "schema": "igloo-kit/1", "name": "repl-3s-1c", "protocol": "replication",
        "replication": {"servers": 3, "clients": 1, "ops": [1, 2, 3], "max_crashes": 1},
        "sim": {"channel": "fifo", "steps": 2000},
        "faults": {"crashes": [{"node": 0, "step": 50}], "max_detect_delay": 10},
        "depth": 12
      })"},
      {"auth-2a", R"({
        "schema": "igloo-kit/1", "name": "auth-2a", "protocol": "auth",
        "auth": {"agents": 2, "max_runs": 1},
        "sim": {"channel": "lossy-set", "loss": 0.0, "steps": 500},
        "depth": 10, "interface_depth": 3
      })"},
  };
  return sources;
}

ProtocolKind protocol_from_name(const std::string& s) {
  if (s == "leader") return ProtocolKind::kLeader;
  if (s == "replication") return ProtocolKind::kReplication;
  if (s == "auth") return ProtocolKind::kAuth;
  throw Error(ErrorCode::kConfig, "unknown protocol '" + s + "'");
}

SimSettings sim_from_json(const json& j) {
  SimSettings s;
  const std::string channel = j.value("channel", std::string(channel_kind_name(s.channel)));
  if (channel == "lossy-set") {
    s.channel = ChannelKind::kLossySet;
  } else if (channel == "fifo") {
    s.channel = ChannelKind::kFifo;
  } else {
    throw Error(ErrorCode::kConfig, "unknown channel '" + channel + "'");
  }
  s.loss = j.value("loss", s.loss);
  if (!(s.loss >= 0.0 && s.loss < 1.0)) throw Error(ErrorCode::kConfig, "loss must be in [0, 1)");
  s.steps = j.value("steps", s.steps);
  const std::string backend = j.value("backend", std::string(backend_name(s.backend)));
  if (backend == backend_name(Backend::kEventSystem)) {
    s.backend = Backend::kEventSystem;
  } else if (backend == backend_name(Backend::kHeap)) {
    s.backend = Backend::kHeap;
  } else {
    throw Error(ErrorCode::kConfig, "unknown backend '" + backend + "'");
  }
  const std::string mode = j.value("mode", std::string("strict"));
  if (mode != "strict" && mode != "audit") {
    throw Error(ErrorCode::kConfig, "unknown mode '" + mode + "'");
  }
  s.mode = mode == "audit" ? MonitorMode::kAudit : MonitorMode::kStrict;
  s.program = j.value("program", s.program);
  return s;
}

json sim_to_json(const SimSettings& s) {
  return {{"channel", channel_kind_name(s.channel)},
          {"loss", s.loss},
          {"steps", s.steps},
          {"backend", backend_name(s.backend)},
          {"mode", s.mode == MonitorMode::kAudit ? "audit" : "strict"},
          {"program", s.program}};
}

void check_faults(const Scenario& sc, const FaultPlan& faults) {
  if (faults.crashes.empty()) return;
  if (sc.protocol != ProtocolKind::kReplication) {
    throw Error(ErrorCode::kConfig, "crash faults are only modelled for replication");
  }
  if (static_cast<int>(faults.crashes.size()) > sc.repl.max_crashes) {
    throw Error(ErrorCode::kConfig, "more scripted crashes than max_crashes");
  }
  for (const auto& c : faults.crashes) {
    if (!sc.repl.is_server(c.node)) {
      throw Error(ErrorCode::kConfig, "only servers crash, got node " + std::to_string(c.node));
    }
  }
}

TraceProperty repl_consistency_property(const ReplConfig& cfg) {
  auto stack = std::make_shared<ReplStack>(build_repl_stack(cfg));
  return {"backup_consistency", [stack](const Trace& t) {
            ReplState s = stack->protocol.initial().front();
            const auto invs = stack->step_invariants();
            for (const auto& e : t) {
              auto next = repl_step(*stack, s, e);
              if (!next) return false;
              for (const auto& inv : invs) {
                if (!inv.holds(s, e, *next)) return false;
              }
              s = std::move(*next);
            }
            return true;
          }};
}

// The composed replication system is deterministic per event, so replay
// follows the logged events directly instead of enumerating successors,
// whose typed send domains hold every bounded log.
ReplayVerdict replay_replication(const ReplConfig& cfg, const TraceLog& log) {
  const ReplStack stack = build_repl_stack(cfg);
  ReplayVerdict v;
  ReplState s = stack.protocol.initial().front();
  for (auto& [pos, event] : model_events(log, repl_gamma())) {
    auto next = repl_step(stack, s, event);
    if (!next) {
      v.status = Status::kFail;
      v.stuck_at = pos;
      v.stuck_event = event;
      return v;
    }
    s = std::move(*next);
    ++v.events_replayed;
  }
  return v;
}

}  // namespace

const char* protocol_name(ProtocolKind p) {
  switch (p) {
    case ProtocolKind::kLeader:
      return "leader";
    case ProtocolKind::kReplication:
      return "replication";
    case ProtocolKind::kAuth:
      return "auth";
  }
  return "?";
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "scenario must be a JSON object");
  if (j.contains("schema") && j["schema"] != kSchemaVersion) {
    throw Error(ErrorCode::kConfig, "unsupported schema " + j["schema"].dump());
  }
  try {
    Scenario sc;
    sc.name = j.value("name", std::string("unnamed"));
    sc.protocol = protocol_from_name(j.value("protocol", std::string("leader")));
    sc.ring = j.contains("ring") ? ring_from_json(j["ring"]) : RingConfig::Sorted({1, 2, 3});
    if (j.contains("replication")) sc.repl = repl_config_from_json(j["replication"]);
    if (j.contains("auth")) sc.auth = auth_config_from_json(j["auth"]);
    if (j.contains("sim")) sc.sim = sim_from_json(j["sim"]);
    if (j.contains("faults")) sc.faults = fault_plan_from_json(j["faults"]);
    sc.depth = j.value("depth", sc.depth);
    if (j.contains("interface_depth")) sc.interface_depth = j["interface_depth"].get<std::size_t>();
    if (sc.protocol == ProtocolKind::kReplication) sc.sim.channel = ChannelKind::kFifo;
    check_faults(sc, sc.faults);
    return sc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed scenario: ") + e.what());
  }
}

json to_json(const Scenario& s) {
  json j{{"schema", kSchemaVersion},
         {"name", s.name},
         {"protocol", protocol_name(s.protocol)},
         {"sim", sim_to_json(s.sim)},
         {"depth", s.depth}};
  if (s.interface_depth) j["interface_depth"] = *s.interface_depth;
  json faults;
  to_json(faults, s.faults);
  j["faults"] = faults;
  switch (s.protocol) {
    case ProtocolKind::kLeader:
      j["ring"] = s.ring;
      break;
    case ProtocolKind::kReplication:
      j["replication"] = s.repl;
      break;
    case ProtocolKind::kAuth:
      j["auth"] = s.auth;
      break;
  }
  return j;
}

std::vector<std::string> builtin_scenario_names() {
  std::vector<std::string> out;
  for (const auto& [name, src] : builtin_sources()) out.push_back(name);
  return out;
}

std::optional<json> builtin_scenario(const std::string& name) {
  const auto& sources = builtin_sources();
  auto it = sources.find(name);
  if (it == sources.end()) return std::nullopt;
  return json::parse(it->second);
}

Scenario load_scenario(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  const fs::path path(name_or_path);
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) {
    std::ifstream in(path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::kConfig, "cannot parse " + name_or_path);
    return scenario_from_json(j);
  }
  std::string stem = path.filename().string();
  if (path.extension() == ".json") stem = path.stem().string();
  if (auto j = builtin_scenario(stem)) return scenario_from_json(*j);
  throw Error(ErrorCode::kConfig, "no scenario file or built-in named '" + name_or_path + "'");
}

SimSetup make_sim_setup(const Scenario& sc) {
  switch (sc.protocol) {
    case ProtocolKind::kLeader:
      return make_leader_setup(sc.ring, sc.sim);
    case ProtocolKind::kReplication:
      return make_repl_setup(sc.repl, sc.sim);
    case ProtocolKind::kAuth:
      return make_auth_setup(sc.auth, sc.sim);
  }
  throw Error(ErrorCode::kConfig, "unknown protocol");
}

SimResult run_sim(const Scenario& sc, const FaultPlan& faults, std::uint64_t seed,
                  std::size_t max_steps) {
  check_faults(sc, faults);
  SimSetup setup = make_sim_setup(sc);
  return run_setup(setup, faults, seed, max_steps, sc.sim.mode);
}

EventMap scenario_gamma(const Scenario& sc) {
  switch (sc.protocol) {
    case ProtocolKind::kLeader:
      return leader_gamma();
    case ProtocolKind::kReplication:
      return repl_gamma();
    case ProtocolKind::kAuth:
      return auth_gamma();
  }
  return leader_gamma();
}

ReplayVerdict replay_scenario_log(const Scenario& sc, const TraceLog& log) {
  switch (sc.protocol) {
    case ProtocolKind::kLeader:
      return replay_against_model(log, decompose_leader(sc.ring).recompose(), leader_gamma());
    case ProtocolKind::kReplication:
      return replay_replication(sc.repl, log);
    case ProtocolKind::kAuth:
      return replay_against_model(log, build_auth_stack(sc.auth).recompose(), auth_gamma());
  }
  return {};
}

TraceProperty scenario_global_property(const Scenario& sc) {
  switch (sc.protocol) {
    case ProtocolKind::kLeader:
      return preimage_property(leader_pi_hat(build_leader_stack(sc.ring)), leader_uniqueness());
    case ProtocolKind::kReplication:
      return repl_consistency_property(sc.repl);
    case ProtocolKind::kAuth: {
      const AuthStack st = build_auth_stack(sc.auth);
      return preimage_property(st.pi, st.agreement);
    }
  }
  return accept_all();
}

}  // namespace igloo
