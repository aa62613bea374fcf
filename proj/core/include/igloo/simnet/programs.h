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

#ifndef IGLOO_SIMNET_PROGRAMS_H_
#define IGLOO_SIMNET_PROGRAMS_H_

#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "igloo/protocols/auth.h"
#include "igloo/protocols/leader.h"
#include "igloo/protocols/replication.h"
#include "igloo/simnet/node.h"
#include "igloo/simnet/scenario.h"
#include "igloo/simnet/simulator.h"

namespace igloo {

// Leader election node: keeps only the largest identifier seen so far and
// keeps forwarding it.
struct LeaderProgramState {
  int id = 0;
  int out_addr = 0;
  int to_send = 0;
  bool done = false;
};

// `buffered = false` forwards larger identifiers without the accept step,
// which sends identifiers that are not in the output buffer.
NodeProgram<LeaderProgramState> leader_program(int id, int out_addr, bool buffered = true);

struct ReplServerProgramState {
  int id = 0;
  std::vector<int> peers;  // other servers then clients, receive rotation
  std::size_t next_peer = 0;
  std::set<int> up;        // servers not reported crashed
  int following = -1;      // highest server whose update was taken
  std::vector<int> log;
  std::deque<std::pair<int, int>> backlog;  // (client, op)
  std::optional<std::pair<int, int>> serving;
  std::vector<int> proposal;
  std::set<int> missing_acks;
  bool wait_for_acks = true;
};

NodeProgram<ReplServerProgramState> repl_server_program(const ReplConfig& cfg, int id);

struct ReplClientProgramState {
  int id = 0;
  std::vector<int> todo;
  std::size_t issued = 0;
  std::optional<int> waiting_for;
  int target = -1;
  std::set<int> up;
  std::size_t next_server = 0;
  std::size_t completed = 0;
};

NodeProgram<ReplClientProgramState> repl_client_program(const ReplConfig& cfg, int id);

struct AuthInitiatorState {
  int agent = 0;
  int partner = 0;
  MsgTerm nonce;
  bool done = false;
};

NodeProgram<AuthInitiatorState> auth_initiator_program(const AuthConfig& cfg, int agent,
                                                       int run);

struct AuthResponderState {
  int agent = 0;
  MsgTerm nonce;
  bool done = false;
};

NodeProgram<AuthResponderState> auth_responder_program(const AuthConfig& cfg, int agent,
                                                       int run);

// Scheduler inputs per protocol.
SimSetup make_leader_setup(const RingConfig& ring, const SimSettings& sim);
SimSetup make_repl_setup(const ReplConfig& cfg, const SimSettings& sim);
SimSetup make_auth_setup(const AuthConfig& cfg, const SimSettings& sim);

// Log record -> recomposed-model event.
EventMap leader_gamma();
EventMap repl_gamma();
EventMap auth_gamma();

}  // namespace igloo

#endif  // IGLOO_SIMNET_PROGRAMS_H_
