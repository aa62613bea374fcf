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

#include <memory>

#include "igloo/simnet/programs.h"

namespace igloo {

namespace {

using Kind = InboxEvent::Kind;
using K = MsgTerm::Kind;

// Every message goes through the one shared network address.
constexpr int kNetwork = 0;

const IoRequest kReceive{"receive", Value()};

bool is_m1(const MsgTerm& m) {
  return m.is(K::kPair) && m.left().is(K::kAgent) && m.right().is(K::kPair) &&
         m.right().left().is(K::kAgent) && m.right().right().is(K::kNonce);
}

using AuthNode = MonitoredNode<AuthLocal, AuthInitiatorState>;
using AuthRespNode = MonitoredNode<AuthLocal, AuthResponderState>;

}  // namespace

NodeProgram<AuthInitiatorState> auth_initiator_program(const AuthConfig& cfg, int agent,
                                                       int run) {
  AuthInitiatorState init;
  init.agent = agent;
  init.partner = cfg.agents > 1 ? (agent + 1) % cfg.agents : cfg.attacker();
  init.nonce = auth_nonce(cfg, true, agent, run);
  return {"auth-initiator", init,
          [cfg](const AuthInitiatorState& s,
                const InboxEvent& ev) -> StepResult<AuthInitiatorState> {
            AuthInitiatorState t = s;
            if (t.done) return {t, {}};
            switch (ev.kind) {
              case Kind::kStart:
                return {t,
                        {{"send", auth_m1(t.agent, t.partner, t.nonce).to_value()}, kReceive}};
              case Kind::kInput: {
                const MsgTerm m = MsgTerm::from_value(ev.in);
                if (m.is(K::kSign) && m.right().is(K::kPair)) {
                  const MsgTerm& nb = m.right().left();
                  if (m == auth_m2(cfg, t.partner, t.agent, t.nonce, nb)) {
                    t.done = true;
                    return {t,
                            {{"commit", Value::Tuple({Value::Int(t.partner), t.nonce.to_value(),
                                                      nb.to_value()})}}};
                  }
                }
                return {t, {kReceive}};
              }
              default:
                return {t, {kReceive}};
            }
          }};
}

NodeProgram<AuthResponderState> auth_responder_program(const AuthConfig& cfg, int agent,
                                                       int run) {
  AuthResponderState init;
  init.agent = agent;
  init.nonce = auth_nonce(cfg, false, agent, run);
  return {"auth-responder", init,
          [cfg](const AuthResponderState& s,
                const InboxEvent& ev) -> StepResult<AuthResponderState> {
            AuthResponderState t = s;
            if (t.done) return {t, {}};
            if (ev.kind == Kind::kInput) {
              const MsgTerm m = MsgTerm::from_value(ev.in);
              if (is_m1(m) && m.right().left().agent() == t.agent &&
                  m.left().agent() != t.agent) {
                t.done = true;
                const MsgTerm reply =
                    auth_m2(cfg, t.agent, m.left().agent(), m.right().right(), t.nonce);
                return {t, {{"send", reply.to_value()}}};
              }
            }
            return {t, {kReceive}};
          }};
}

EventMap auth_gamma() {
  return [](const LogRecord& r) -> std::optional<Event> {
    if (!r.committed()) return std::nullopt;
    const Action& a = *r.action;
    if (a.bio == "receive") return Event{"receive", {r.index, a.in}};
    return Event{a.bio, {r.index, a.out}};
  };
}

SimSetup make_auth_setup(const AuthConfig& cfg, const SimSettings& sim) {
  auto stack = std::make_shared<AuthStack>(build_auth_stack(cfg));
  SimSetup setup;
  setup.channel = ChannelModel::LossySet(sim.loss);
  int id = 0;
  for (const auto& comp : stack->components) {
    const bool initiator = comp.index.at(0).as_symbol() == "init";
    const int agent = static_cast<int>(comp.index.at(1).as_int());
    const int run = static_cast<int>(comp.index.at(2).as_int());
    if (initiator) {
      setup.nodes.push_back(std::make_shared<AuthNode>(
          id, comp.index, comp.ges, auth_initiator_program(cfg, agent, run), sim.backend,
          sim.mode));
    } else {
      setup.nodes.push_back(std::make_shared<AuthRespNode>(
          id, comp.index, comp.ges, auth_responder_program(cfg, agent, run), sim.backend,
          sim.mode));
    }
    ++id;
  }
  setup.route_send = [](const SimNode&, const Value& out) { return SendRoute{kNetwork, out}; };
  setup.route_receive = [](const SimNode&, const Value&) {
    return ReceiveRoute{kNetwork, std::nullopt};
  };
  setup.gamma = auth_gamma();
  setup.global_checks = {stack->agreement.name};

  auto image = std::make_shared<Trace>();
  setup.online = [stack, image](const SimView&, const std::optional<Event>& e) {
    std::vector<std::string> bad;
    if (!e) return bad;
    const Event mapped = stack->pi(*e);
    if (is_skip(mapped)) return bad;
    image->push_back(mapped);
    if (mapped.name == "i_commit" && !stack->agreement.accepts(*image)) {
      bad.push_back(stack->agreement.name);
    }
    return bad;
  };
  setup.finish = [](SimResult& r) {
    r.counts["commits"] = 0;
    for (const auto& rec : r.log.records) {
      if (rec.kind == RecordKind::kGhost && rec.action->bio == "commit") ++r.counts["commits"];
    }
  };
  return setup;
}

}  // namespace igloo
