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

#ifndef IGLOO_PROTOCOLS_AUTH_H_
#define IGLOO_PROTOCOLS_AUTH_H_

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/refinement.h"
#include "igloo/kernel/search.h"
#include "igloo/process/io_guarded.h"

namespace igloo {

// Symbolic message terms. Agents are small integers; Sign takes a private key.
class MsgTerm {
 public:
  enum class Kind { kAgent, kNonce, kPubKey, kPriKey, kPair, kSign, kJunk };

  static MsgTerm Agent(int a);
  static MsgTerm Nonce(int owner, int index);
  static MsgTerm PubKey(int a);
  static MsgTerm PriKey(int a);
  static MsgTerm Pair(MsgTerm left, MsgTerm right);
  // Throws std::invalid_argument unless key is a PriKey.
  static MsgTerm Sign(MsgTerm key, MsgTerm body);
  static MsgTerm Junk();

  Kind kind() const { return kind_; }
  int agent() const { return a_; }  // Agent, PubKey, PriKey, Nonce owner
  int index() const { return b_; }  // Nonce index
  const MsgTerm& left() const;      // Pair left, Sign key
  const MsgTerm& right() const;     // Pair right, Sign body
  bool is(Kind k) const { return kind_ == k; }

  std::strong_ordering operator<=>(const MsgTerm& other) const;
  bool operator==(const MsgTerm& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
  }

  std::string to_string() const;
  Value to_value() const;
  static MsgTerm from_value(const Value& v);

 private:
  Kind kind_ = Kind::kJunk;
  int a_ = 0;
  int b_ = 0;
  std::shared_ptr<const std::pair<MsgTerm, MsgTerm>> kids_;
};

// Display name of an agent: A, B, C, ... for honest agents.
std::string agent_name(int a);

using TermSet = std::set<MsgTerm>;

struct DYKnowledge {
  TermSet known;
  auto operator<=>(const DYKnowledge&) const = default;
};

// Least superset of known within universe closed under pairing, projection,
// signing with a known private key, reading signed payloads, and public keys.
// Throws UNIVERSE_NOT_CLOSED if universe is not subterm-closed or does not
// contain known.
DYKnowledge dy_closure(const DYKnowledge& known, const TermSet& universe);
// Same rules without the universe checks; known must lie in universe.
TermSet dy_close_unchecked(TermSet known, const TermSet& universe);

// Adds every subterm of every term.
TermSet subterm_closure(const TermSet& terms);

struct AuthConfig {
  int agents = 2;    // honest agents 0..agents-1; the attacker is agent `agents`
  int max_runs = 1;  // initiator and responder runs per honest agent
  // Mutant switch: the responder signs (N_B, N_A) without the initiator name.
  bool sign_initiator_name = true;

  int attacker() const { return agents; }
};

AuthConfig auth_config_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const AuthConfig& cfg);

struct AuthRun {
  int stage = 0;    // 0 idle, 1 sent or responded, 2 committed (initiator)
  int partner = -1;
  std::optional<MsgTerm> own_nonce;
  std::optional<MsgTerm> peer_nonce;
  auto operator<=>(const AuthRun&) const = default;
};

using RunKey = std::pair<int, int>;  // (agent, run)

struct AuthState {
  std::map<RunKey, AuthRun> initiators;
  std::map<RunKey, AuthRun> responders;
  TermSet ik;  // attacker knowledge, always DY-closed
  auto operator<=>(const AuthState&) const = default;
};

// Component-local state: the run plus the received-message buffer.
struct AuthLocal {
  AuthRun run;
  TermSet ibuf;
  auto operator<=>(const AuthLocal&) const = default;
};

struct AuthEnv {
  TermSet ik;
  auto operator<=>(const AuthEnv&) const = default;
};

void to_json(nlohmann::json& j, const MsgTerm& t);
void to_json(nlohmann::json& j, const AuthRun& r);
void to_json(nlohmann::json& j, const AuthState& s);
void to_json(nlohmann::json& j, const AuthLocal& s);
void to_json(nlohmann::json& j, const AuthEnv& s);

struct AuthComponent {
  Value index;  // (role, agent, run) with role "init" or "resp"
  IOGuardedES<AuthLocal> ges;
};

struct AuthStack {
  AuthConfig cfg;
  TermSet universe;
  // Events: i_send(a, k, b, na), r_respond(b, k, a, na, nb),
  // i_commit(a, k, b, na, nb).
  EventSystem<AuthState> protocol;
  std::vector<AuthComponent> components;
  EventSystem<AuthEnv> env;
  SyncMap chi_e;
  // Interface events: send(idx, m), receive(idx, m), commit(idx, (b, na, nb)).
  Mediator pi;
  SimulationRelation<AuthState, std::pair<std::vector<AuthLocal>, AuthEnv>> relation;
  // Injective agreement of initiators with honest responders.
  TraceProperty agreement;

  EventSystem<std::pair<std::vector<AuthLocal>, AuthEnv>> recompose() const;
  // Agreement read off the run states: every initiator committed with an
  // honest partner is matched by a distinct responder run with equal data.
  StateInvariant<AuthState> agreement_on_states() const;
  // Attacker knowledge only grows.
  StepInvariant<AuthState> ik_monotone() const;
};

MsgTerm auth_m1(int a, int b, const MsgTerm& na);
MsgTerm auth_m2(const AuthConfig& cfg, int b, int a, const MsgTerm& na,
                const MsgTerm& nb);
MsgTerm auth_nonce(const AuthConfig& cfg, bool initiator, int agent, int run);

TermSet auth_universe(const AuthConfig& cfg);
TermSet auth_initial_knowledge(const AuthConfig& cfg);
AuthStack build_auth_stack(const AuthConfig& cfg);

}  // namespace igloo

#endif  // IGLOO_PROTOCOLS_AUTH_H_
