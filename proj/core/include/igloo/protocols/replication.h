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

#ifndef IGLOO_PROTOCOLS_REPLICATION_H_
#define IGLOO_PROTOCOLS_REPLICATION_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/search.h"
#include "igloo/process/io_guarded.h"

namespace igloo {

using ReplLog = std::vector<int>;

// True iff every element is a prefix of the next one.
bool ordered_wrt_prefix(const std::vector<ReplLog>& logs);
bool is_prefix(const ReplLog& a, const ReplLog& b);

// Servers are numbered 0..servers-1 in takeover order, clients follow.
struct ReplConfig {
  int servers = 2;
  int clients = 1;
  std::vector<int> ops{1};  // each client appends these, in order
  int max_crashes = 1;
  // Mutant switch: append without waiting for sync acknowledgements.
  bool wait_for_acks = true;

  std::vector<int> server_ids() const;
  std::vector<int> client_ids() const;
  bool is_server(int x) const { return x >= 0 && x < servers; }
  // Upper bound on log length: every request may be retried once per crash.
  std::size_t max_log() const;
};

ReplConfig repl_config_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const ReplConfig& cfg);

// Messages: request(c, op), sync(log), ack(log), reply(op).
Value repl_request(int client, int op);
Value repl_sync(const ReplLog& log);
Value repl_ack(const ReplLog& log);
Value repl_reply(int op);
std::string repl_message_kind(const Value& msg);
ReplLog repl_message_log(const Value& msg);

struct ReplServer {
  ReplLog log;
  ReplLog pend;  // log plus the addition being synchronized
  std::set<int> live;
  int epoch = -1;  // highest server whose sync this server accepted
  std::vector<std::pair<int, int>> requests;  // (client, op), arrival order
  std::optional<std::pair<int, int>> current;
  std::set<int> to_sync;
  std::set<int> to_ack;
  bool appended = false;
  std::vector<std::pair<int, ReplLog>> acks;  // owed acks, oldest first
  auto operator<=>(const ReplServer&) const = default;
};

struct ReplClient {
  std::set<int> live;
  std::size_t next_op = 0;
  std::optional<int> outstanding;
  int sent_to = -1;
  std::size_t replies = 0;
  auto operator<=>(const ReplClient&) const = default;
};

struct ReplEnv {
  std::set<int> live_env;
  std::map<std::pair<int, int>, std::vector<Value>> channels;  // FIFO, front first
  int crashes = 0;
  auto operator<=>(const ReplEnv&) const = default;
};

struct ReplState {
  std::map<int, ReplServer> servers;
  std::map<int, ReplClient> clients;
  ReplEnv env;
  auto operator<=>(const ReplState&) const = default;
};

void to_json(nlohmann::json& j, const ReplServer& s);
void to_json(nlohmann::json& j, const ReplClient& s);
void to_json(nlohmann::json& j, const ReplEnv& s);
void to_json(nlohmann::json& j, const ReplState& s);

// Server a considers itself primary when every lower server left its live set.
bool repl_is_primary(const ReplServer& s, int a);

// The primary's log is a prefix of every live backup's log.
bool repl_backup_consistent(const ReplState& s, int primary);

using ReplRecomposed =
    std::pair<std::pair<std::vector<ReplServer>, std::vector<ReplClient>>, ReplEnv>;

struct ReplStack {
  ReplConfig cfg;
  // Events: send(x, p, m), receive(x, p, m), detect(x, s), handle(a),
  // append(a), crash(s).
  EventSystem<ReplState> protocol;
  std::vector<std::pair<int, IOGuardedES<ReplServer>>> server_components;
  std::vector<std::pair<int, IOGuardedES<ReplClient>>> client_components;
  EventSystem<ReplEnv> env;
  SyncMap chi_e;

  // Backup consistency whenever a primary sends a reply.
  StepInvariant<ReplState> consistency() const;
  std::vector<StateInvariant<ReplState>> state_invariants() const;
  std::vector<StepInvariant<ReplState>> step_invariants() const;

  EventSystem<ReplRecomposed> recompose() const;
};

ReplStack build_repl_stack(const ReplConfig& cfg);

// The protocol transition taken by one event from s, or nullopt if the event
// is not enabled there. Events are named as in ReplStack::protocol, which
// are also the names of the recomposed system's events.
std::optional<ReplState> repl_step(const ReplStack& st, const ReplState& s, const Event& e);

IOGuardedES<ReplServer> repl_server_component(const ReplConfig& cfg, int a);
IOGuardedES<ReplClient> repl_client_component(const ReplConfig& cfg, int c);

}  // namespace igloo

#endif  // IGLOO_PROTOCOLS_REPLICATION_H_
