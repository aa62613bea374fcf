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

Value iv(int x) { return Value::Int(x); }

std::vector<IoRequest> send_then_receive(const LeaderProgramState& s) {
  return {{"send", Value::Tuple({iv(s.to_send), iv(s.out_addr)})}, {"receive", Value()}};
}

using LeaderSimNode = MonitoredNode<LeaderNode, LeaderProgramState>;

}  // namespace

NodeProgram<LeaderProgramState> leader_program(int id, int out_addr, bool buffered) {
  LeaderProgramState init{id, out_addr, id, false};
  using Kind = InboxEvent::Kind;
  return {buffered ? "leader" : "leader-unbuffered", init,
          [buffered](const LeaderProgramState& s, const InboxEvent& ev)
              -> StepResult<LeaderProgramState> {
            LeaderProgramState t = s;
            switch (ev.kind) {
              case Kind::kStart: {
                std::vector<IoRequest> reqs{{"setup", Value()}};
                for (auto& r : send_then_receive(t)) reqs.push_back(std::move(r));
                return {t, reqs};
              }
              case Kind::kInput: {
                const int msg = static_cast<int>(ev.in.as_int());
                if (msg == t.id) {
                  t.done = true;
                  return {t, {{"elect", Value()}}};
                }
                std::vector<IoRequest> reqs;
                if (msg > t.to_send) {
                  if (buffered) reqs.push_back({"accept", iv(msg)});
                  t.to_send = msg;
                }
                for (auto& r : send_then_receive(t)) reqs.push_back(std::move(r));
                return {t, reqs};
              }
              case Kind::kTimeout:
              case Kind::kTick:
              case Kind::kSuspect:
                if (t.done) return {t, {}};
                return {t, send_then_receive(t)};
            }
            return {t, {}};
          }};
}

EventMap leader_gamma() {
  return [](const LogRecord& r) -> std::optional<Event> {
    if (!r.committed()) return std::nullopt;
    const Action& a = *r.action;
    const Value& i = r.index;
    if (a.bio == "receive") return Event{"receive", {i, a.in}};
    if (a.bio == "send") return Event{"send", {i, a.out.at(0), a.out.at(1)}};
    if (a.bio == "accept") return Event{"accept", {i, a.out}};
    return Event{a.bio, {i}};
  };
}

SimSetup make_leader_setup(const RingConfig& ring, const SimSettings& sim) {
  ring.validate();
  SimSetup setup;
  setup.channel = sim.channel == ChannelKind::kLossySet ? ChannelModel::LossySet(sim.loss)
                                                        : ChannelModel::Fifo();
  const bool buffered = sim.program != "unbuffered";
  std::vector<std::shared_ptr<LeaderSimNode>> typed;
  for (int i : ring.ids) {
    const int a = ring.addr_of(ring.next_of(i));
    auto node = std::make_shared<LeaderSimNode>(i, iv(i), leader_component(ring, i, a),
                                                leader_program(i, a, buffered), sim.backend,
                                                sim.mode);
    typed.push_back(node);
    setup.nodes.push_back(node);
  }
  setup.route_send = [](const SimNode&, const Value& out) {
    return SendRoute{static_cast<int>(out.at(1).as_int()), out.at(0)};
  };
  setup.route_receive = [ring](const SimNode& n, const Value&) {
    return ReceiveRoute{ring.addr_of(n.id()), std::nullopt};
  };
  setup.gamma = leader_gamma();
  const bool set_semantics = sim.channel == ChannelKind::kLossySet;
  setup.global_checks = {"uniqueness", "leader_is_max"};
  if (set_semantics) setup.global_checks.push_back("buffer_invariant");

  auto elected = std::make_shared<std::set<int>>();
  setup.online = [ring, typed, elected, set_semantics](
                     const SimView& view, const std::optional<Event>& e) {
    std::vector<std::string> bad;
    if (e && e->name == "elect") {
      elected->insert(static_cast<int>(e->params[0].as_int()));
      if (elected->size() > 1) bad.push_back("uniqueness");
      if (*elected->rbegin() != ring.max_id() || *elected->begin() != ring.max_id()) {
        bad.push_back("leader_is_max");
      }
    }
    if (set_semantics && e && e->name == "receive") {
      InterfaceLeaderState s;
      for (int a : ring.addresses()) {
        auto& chan = s.chan[a];
        for (const auto& env : view.channel.pending(a)) {
          chan.insert(static_cast<int>(env.payload.as_int()));
        }
      }
      for (const auto& n : typed) s.nodes[n->id()] = n->monitor().state();
      if (!leader_buffer_invariant(ring, s)) bad.push_back("buffer_invariant");
    }
    return bad;
  };
  setup.finish = [elected](SimResult& r) {
    r.counts["elects"] = 0;
    for (const auto& rec : r.log.records) {
      if (rec.kind == RecordKind::kGhost && rec.action->bio == "elect") ++r.counts["elects"];
    }
    r.counts["elected_nodes"] = elected->size();
  };
  return setup;
}

}  // namespace igloo
