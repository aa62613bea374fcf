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

#ifndef IGLOO_PROTOCOLS_LEADER_H_
#define IGLOO_PROTOCOLS_LEADER_H_

#include <compare>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/refinement.h"
#include "igloo/process/io_guarded.h"

namespace igloo {

// Nodes arranged in a unidirectional ring.
struct RingConfig {
  std::vector<int> ids;     // sorted, distinct
  std::map<int, int> next;  // a single cycle over ids
  std::map<int, int> addr;  // injective

  // Ring in increasing id order; addr(i) = 1000 + i.
  static RingConfig Sorted(std::vector<int> ids);
  // Throws INVALID_RING unless ids are distinct and non-empty, next is one
  // cycle over ids, and addr is injective.
  void validate() const;

  int next_of(int i) const { return next.at(i); }
  int addr_of(int i) const { return addr.at(i); }
  std::vector<int> addresses() const;
  int max_id() const { return ids.back(); }
};

void to_json(nlohmann::json& j, const RingConfig& cfg);
// Accepts {"ids": [...]} with optional "next" and "addr" objects keyed by id.
RingConfig ring_from_json(const nlohmann::json& j);

struct AbstractLeaderState {
  std::map<int, bool> leader;
  auto operator<=>(const AbstractLeaderState&) const = default;
};

struct ProtocolNode {
  bool leader = false;
  std::set<int> chan;
  auto operator<=>(const ProtocolNode&) const = default;
};

struct ProtocolLeaderState {
  std::map<int, ProtocolNode> nodes;
  auto operator<=>(const ProtocolLeaderState&) const = default;
};

// Local state of one node in the interface model and of one component.
struct LeaderNode {
  bool leader = false;
  std::set<int> ibuf;
  std::set<int> obuf;
  auto operator<=>(const LeaderNode&) const = default;
};

struct InterfaceLeaderState {
  std::map<int, LeaderNode> nodes;
  std::map<int, std::set<int>> chan;  // keyed by address
  auto operator<=>(const InterfaceLeaderState&) const = default;
};

struct LeaderEnvState {
  std::map<int, std::set<int>> chan;  // keyed by address
  auto operator<=>(const LeaderEnvState&) const = default;
};

void to_json(nlohmann::json& j, const AbstractLeaderState& s);
void to_json(nlohmann::json& j, const ProtocolLeaderState& s);
void to_json(nlohmann::json& j, const LeaderNode& s);
void to_json(nlohmann::json& j, const InterfaceLeaderState& s);
void to_json(nlohmann::json& j, const LeaderEnvState& s);

struct LeaderStack {
  RingConfig ring;
  EventSystem<AbstractLeaderState> abstract_model;
  EventSystem<ProtocolLeaderState> protocol_model;
  EventSystem<InterfaceLeaderState> interface_model;
  SimulationRelation<AbstractLeaderState, ProtocolLeaderState> r_pa;
  SimulationRelation<ProtocolLeaderState, InterfaceLeaderState> r_ip;
  Mediator pi_pa;
  Mediator pi_ip;
};

// Events: abstract elect(i); protocol setup(i), accept(i, j), elect(i);
// interface setup(i), receive(i, j), accept(i, j), send(i, j, a), elect(i).
LeaderStack build_leader_stack(const RingConfig& ring);

// Abstract model whose elect guard is always true.
EventSystem<AbstractLeaderState> leader_abstract_without_guard(const RingConfig& ring);
// Maps elect to skip.
Mediator leader_pi_pa_drop_elect();
// Maps every send(i, j, a) to accept(i, j).
Mediator leader_pi_ip_always_accept();

// At most one node id is ever elected.
TraceProperty leader_uniqueness();
// The mediator from interface events to abstract events.
Mediator leader_pi_hat(const LeaderStack& stack);

// i in chan_j implies k < i for every node k on the ring strictly after i
// and before j.
bool leader_channel_invariant(const RingConfig& ring, const ProtocolLeaderState& s);
// j in ibuf_i implies j in chan_addr(i).
bool leader_buffer_invariant(const RingConfig& ring, const InterfaceLeaderState& s);
// Only the maximum id is ever leader.
bool leader_is_max(const RingConfig& ring, const std::map<int, bool>& leader);

struct LeaderDecomposition {
  RingConfig ring;
  std::vector<std::pair<int, IOGuardedES<LeaderNode>>> components;
  EventSystem<LeaderEnvState> env;
  SyncMap chi_e;
  std::map<int, std::pair<int, int>> gamma;  // i -> (i, addr(next(i)))

  // Components interleaved (events tagged with the node id) and
  // synchronized with the environment.
  EventSystem<std::pair<std::vector<LeaderNode>, LeaderEnvState>> recompose() const;
};

// Component operations: setup (ghost), receive (input: sender id),
// accept (ghost, output: id), send (output: (id, address)), elect (ghost).
IOGuardedES<LeaderNode> leader_component(const RingConfig& ring, int i, int a);
LeaderDecomposition decompose_leader(const RingConfig& ring);

}  // namespace igloo

#endif  // IGLOO_PROTOCOLS_LEADER_H_
