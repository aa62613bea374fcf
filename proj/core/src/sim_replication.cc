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

#include <algorithm>
#include <memory>

#include "igloo/simnet/programs.h"

namespace igloo {

namespace {

using Kind = InboxEvent::Kind;

Value iv(int x) { return Value::Int(x); }
int as_int(const Value& v) { return static_cast<int>(v.as_int()); }

IoRequest send_to(int peer, Value msg) {
  return {"send", Value::Tuple({iv(peer), std::move(msg)})};
}

bool lowest_up(const ReplServerProgramState& s) {
  return !s.up.empty() && *s.up.begin() == s.id;
}

// One pass of the server loop: finish or start an update if possible, then
// poll the next peer.
std::vector<IoRequest> server_loop(ReplServerProgramState& s) {
  std::vector<IoRequest> reqs;
  if (!s.serving && lowest_up(s) && !s.backlog.empty()) {
    s.serving = s.backlog.front();
    s.backlog.pop_front();
    s.proposal = s.log;
    s.proposal.push_back(s.serving->second);
    s.missing_acks = s.up;
    s.missing_acks.erase(s.id);
    reqs.push_back({"handle", Value()});
    for (int b : s.missing_acks) reqs.push_back(send_to(b, repl_sync(s.proposal)));
  }
  if (s.serving && (s.missing_acks.empty() || !s.wait_for_acks)) {
    s.log = s.proposal;
    reqs.push_back({"append", Value()});
    reqs.push_back(send_to(s.serving->first, repl_reply(s.serving->second)));
    s.serving.reset();
  }
  if (!s.peers.empty()) {
    reqs.push_back({"receive", iv(s.peers[s.next_peer])});
    s.next_peer = (s.next_peer + 1) % s.peers.size();
  }
  return reqs;
}

std::vector<IoRequest> client_loop(ReplClientProgramState& s, const std::vector<int>& servers) {
  std::vector<IoRequest> reqs;
  if (!s.waiting_for && s.issued < s.todo.size() && !s.up.empty()) {
    s.waiting_for = s.todo[s.issued++];
    s.target = *s.up.begin();
    reqs.push_back(send_to(s.target, repl_request(s.id, *s.waiting_for)));
  }
  if (s.waiting_for) {
    reqs.push_back({"receive", iv(servers[s.next_server])});
    s.next_server = (s.next_server + 1) % servers.size();
  }
  return reqs;
}

using ServerNode = MonitoredNode<ReplServer, ReplServerProgramState>;
using ClientNode = MonitoredNode<ReplClient, ReplClientProgramState>;

}  // namespace

NodeProgram<ReplServerProgramState> repl_server_program(const ReplConfig& cfg, int id) {
  ReplServerProgramState init;
  init.id = id;
  for (int b : cfg.server_ids()) {
    if (b != id) init.peers.push_back(b);
    init.up.insert(b);
  }
  for (int c : cfg.client_ids()) init.peers.push_back(c);
  init.wait_for_acks = cfg.wait_for_acks;
  return {cfg.wait_for_acks ? "repl-server" : "repl-server-no-ack-wait", init,
          [](const ReplServerProgramState& s,
             const InboxEvent& ev) -> StepResult<ReplServerProgramState> {
            ReplServerProgramState t = s;
            std::vector<IoRequest> reqs;
            if (ev.kind == Kind::kInput) {
              const int from = as_int(ev.out);
              const std::string kind = repl_message_kind(ev.in);
              if (kind == "request" && as_int(ev.in.at(1)) == from) {
                t.backlog.emplace_back(from, as_int(ev.in.at(2)));
              } else if (kind == "sync") {
                if (!t.serving && t.up.count(from) && from >= t.following) {
                  t.log = repl_message_log(ev.in);
                  t.following = from;
                  reqs.push_back(send_to(from, repl_ack(t.log)));
                }
              } else if (kind == "ack") {
                if (t.serving && repl_message_log(ev.in) == t.proposal) {
                  t.missing_acks.erase(from);
                }
              }
            } else if (ev.kind == Kind::kSuspect) {
              reqs.push_back({"detect", iv(ev.suspect)});
              t.up.erase(ev.suspect);
              t.missing_acks.erase(ev.suspect);
            }
            for (auto& r : server_loop(t)) reqs.push_back(std::move(r));
            return {t, reqs};
          }};
}

NodeProgram<ReplClientProgramState> repl_client_program(const ReplConfig& cfg, int id) {
  ReplClientProgramState init;
  init.id = id;
  init.todo = cfg.ops;
  for (int b : cfg.server_ids()) init.up.insert(b);
  const std::vector<int> servers = cfg.server_ids();
  return {"repl-client", init,
          [servers](const ReplClientProgramState& s,
                    const InboxEvent& ev) -> StepResult<ReplClientProgramState> {
            ReplClientProgramState t = s;
            std::vector<IoRequest> reqs;
            if (ev.kind == Kind::kInput) {
              const int op = as_int(ev.in.at(1));
              if (t.waiting_for && *t.waiting_for == op) {
                t.waiting_for.reset();
                ++t.completed;
              }
            } else if (ev.kind == Kind::kSuspect) {
              reqs.push_back({"detect", iv(ev.suspect)});
              t.up.erase(ev.suspect);
              if (t.waiting_for && t.target == ev.suspect && !t.up.empty()) {
                t.target = *t.up.begin();
                reqs.push_back(send_to(t.target, repl_request(t.id, *t.waiting_for)));
              }
            }
            for (auto& r : client_loop(t, servers)) reqs.push_back(std::move(r));
            return {t, reqs};
          }};
}

EventMap repl_gamma() {
  return [](const LogRecord& r) -> std::optional<Event> {
    if (r.kind == RecordKind::kCrash) return Event{"crash", {iv(*r.subject)}};
    if (!r.committed()) return std::nullopt;
    const Action& a = *r.action;
    const Value& x = r.index;
    if (a.bio == "send") return Event{"send", {x, a.out.at(0), a.out.at(1)}};
    if (a.bio == "receive") return Event{"receive", {x, a.out, a.in}};
    if (a.bio == "detect") return Event{"detect", {x, a.out}};
    return Event{a.bio, {x}};
  };
}

SimSetup make_repl_setup(const ReplConfig& cfg, const SimSettings& sim) {
  auto stack = std::make_shared<ReplStack>(build_repl_stack(cfg));
  SimSetup setup;
  setup.channel = ChannelModel::Fifo();
  for (const auto& [a, comp] : stack->server_components) {
    setup.nodes.push_back(std::make_shared<ServerNode>(a, iv(a), comp, repl_server_program(cfg, a),
                                                       sim.backend, sim.mode));
  }
  for (const auto& [c, comp] : stack->client_components) {
    setup.nodes.push_back(std::make_shared<ClientNode>(c, iv(c), comp, repl_client_program(cfg, c),
                                                       sim.backend, sim.mode));
  }
  setup.route_send = [](const SimNode&, const Value& out) {
    return SendRoute{as_int(out.at(0)), out.at(1)};
  };
  setup.route_receive = [](const SimNode& n, const Value& out) {
    return ReceiveRoute{n.id(), as_int(out)};
  };
  setup.gamma = repl_gamma();

  const auto state_invs = stack->state_invariants();
  const auto step_invs = stack->step_invariants();
  setup.global_checks.push_back("protocol_step");
  for (const auto& inv : state_invs) setup.global_checks.push_back(inv.name);
  for (const auto& inv : step_invs) setup.global_checks.push_back(inv.name);

  // Protocol-level mirror of the run, advanced by every model event.
  auto mirror = std::make_shared<std::optional<ReplState>>(stack->protocol.initial().front());
  setup.online = [stack, mirror, state_invs, step_invs](const SimView&,
                                                        const std::optional<Event>& e) {
    std::vector<std::string> bad;
    if (!e || !mirror->has_value()) return bad;
    const ReplState before = **mirror;
    *mirror = repl_step(*stack, before, *e);
    if (!mirror->has_value()) {
      bad.push_back("protocol_step");
      return bad;
    }
    for (const auto& inv : state_invs) {
      if (!inv.holds(**mirror)) bad.push_back(inv.name);
    }
    for (const auto& inv : step_invs) {
      if (!inv.holds(before, *e, **mirror)) bad.push_back(inv.name);
    }
    return bad;
  };
  setup.finish = [](SimResult& r) {
    r.counts["replies"] = 0;
    r.counts["crashes"] = 0;
    for (const auto& rec : r.log.records) {
      if (rec.kind == RecordKind::kCrash) ++r.counts["crashes"];
      if (rec.kind == RecordKind::kIo && rec.action->bio == "send" &&
          repl_message_kind(rec.action->out.at(1)) == "reply") {
        ++r.counts["replies"];
      }
    }
  };
  return setup;
}

}  // namespace igloo
