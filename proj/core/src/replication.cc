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

#include "igloo/protocols/replication.h"

#include <algorithm>
#include <functional>
#include <string>

#include "igloo/error.h"

namespace igloo {

namespace {

Value iv(int x) { return Value::Int(x); }
int as_int(const Value& v) { return static_cast<int>(v.as_int()); }

Value log_value(const ReplLog& log) {
  std::vector<Value> elems;
  for (int op : log) elems.push_back(iv(op));
  return Value::Tuple(std::move(elems));
}

// Every sequence over ops of length at most n.
std::vector<ReplLog> all_logs(const std::vector<int>& ops, std::size_t n) {
  std::vector<ReplLog> out{{}};
  std::vector<ReplLog> layer{{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<ReplLog> next;
    for (const auto& l : layer) {
      for (int op : ops) {
        ReplLog ext = l;
        ext.push_back(op);
        next.push_back(ext);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Event ev(std::string name, std::vector<Value> params) {
  return Event{std::move(name), std::move(params)};
}

std::set<int> to_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

bool is_prefix(const ReplLog& a, const ReplLog& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool ordered_wrt_prefix(const std::vector<ReplLog>& logs) {
  for (std::size_t i = 1; i < logs.size(); ++i) {
    if (!is_prefix(logs[i - 1], logs[i])) return false;
  }
  return true;
}

std::vector<int> ReplConfig::server_ids() const {
  std::vector<int> out;
  for (int s = 0; s < servers; ++s) out.push_back(s);
  return out;
}

std::vector<int> ReplConfig::client_ids() const {
  std::vector<int> out;
  for (int c = 0; c < clients; ++c) out.push_back(servers + c);
  return out;
}

std::size_t ReplConfig::max_log() const {
  return static_cast<std::size_t>(clients) * ops.size() *
         static_cast<std::size_t>(1 + max_crashes);
}

ReplConfig repl_config_from_json(const nlohmann::json& j) {
  ReplConfig cfg;
  cfg.servers = j.value("servers", cfg.servers);
  cfg.clients = j.value("clients", cfg.clients);
  cfg.ops = j.value("ops", cfg.ops);
  cfg.max_crashes = j.value("max_crashes", cfg.max_crashes);
  cfg.wait_for_acks = j.value("wait_for_acks", cfg.wait_for_acks);
  if (cfg.servers < 1 || cfg.clients < 0 || cfg.max_crashes < 0) {
    throw Error(ErrorCode::kConfig, "replication needs at least one server");
  }
  if (to_set(cfg.ops).size() != cfg.ops.size()) {
    throw Error(ErrorCode::kConfig, "replication ops must be distinct");
  }
  return cfg;
}

void to_json(nlohmann::json& j, const ReplConfig& cfg) {
  j = {{"servers", cfg.servers},     {"clients", cfg.clients},
       {"ops", cfg.ops},             {"max_crashes", cfg.max_crashes},
       {"wait_for_acks", cfg.wait_for_acks}};
}

Value repl_request(int client, int op) {
  return Value::Tuple({Value::Sym("request"), iv(client), iv(op)});
}
Value repl_sync(const ReplLog& log) {
  return Value::Tuple({Value::Sym("sync"), log_value(log)});
}
Value repl_ack(const ReplLog& log) {
  return Value::Tuple({Value::Sym("ack"), log_value(log)});
}
Value repl_reply(int op) { return Value::Tuple({Value::Sym("reply"), iv(op)}); }

std::string repl_message_kind(const Value& msg) { return msg.at(0).as_symbol(); }

ReplLog repl_message_log(const Value& msg) {
  ReplLog out;
  for (const auto& v : msg.at(1).elements()) out.push_back(as_int(v));
  return out;
}

void to_json(nlohmann::json& j, const ReplServer& s) {
  j = {{"log", s.log},        {"pend", s.pend},         {"live", s.live},
       {"epoch", s.epoch},    {"requests", s.requests}, {"to_sync", s.to_sync},
       {"to_ack", s.to_ack},  {"appended", s.appended}, {"acks", s.acks}};
  j["current"] = s.current ? nlohmann::json(*s.current) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ReplClient& s) {
  j = {{"live", s.live},
       {"next_op", s.next_op},
       {"sent_to", s.sent_to},
       {"replies", s.replies}};
  j["outstanding"] = s.outstanding ? nlohmann::json(*s.outstanding) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ReplEnv& s) {
  j = {{"live_env", s.live_env}, {"crashes", s.crashes}};
  j["channels"] = nlohmann::json::object();
  for (const auto& [k, msgs] : s.channels) {
    j["channels"][std::to_string(k.first) + "->" + std::to_string(k.second)] = msgs;
  }
}

void to_json(nlohmann::json& j, const ReplState& s) {
  j = nlohmann::json::object();
  for (const auto& [a, sv] : s.servers) j["servers"][std::to_string(a)] = sv;
  for (const auto& [c, cl] : s.clients) j["clients"][std::to_string(c)] = cl;
  j["env"] = s.env;
}

bool repl_is_primary(const ReplServer& s, int a) {
  return std::none_of(s.live.begin(), s.live.end(), [a](int b) { return b < a; });
}

bool repl_backup_consistent(const ReplState& s, int primary) {
  const auto& log = s.servers.at(primary).log;
  for (int b : s.env.live_env) {
    if (b != primary && !is_prefix(log, s.servers.at(b).log)) return false;
  }
  return true;
}

IOGuardedES<ReplServer> repl_server_component(const ReplConfig& cfg, int a) {
  using S = ReplServer;
  const auto logs = all_logs(cfg.ops, cfg.max_log());
  std::vector<Value> sends;
  std::vector<Value> peers;
  Typing ty;
  for (int b : cfg.server_ids()) {
    if (b == a) continue;
    peers.push_back(iv(b));
    for (const auto& l : logs) {
      sends.push_back(Value::Tuple({iv(b), repl_sync(l)}));
      sends.push_back(Value::Tuple({iv(b), repl_ack(l)}));
    }
  }
  for (int c : cfg.client_ids()) {
    peers.push_back(iv(c));
    for (int op : cfg.ops) sends.push_back(Value::Tuple({iv(c), repl_reply(op)}));
  }
  std::vector<Value> server_peers(peers.begin(), peers.begin() + (cfg.servers - 1));
  ty.declare("send", sends, {Value()});
  ty.declare("receive", peers.empty() ? std::vector<Value>{iv(a)} : peers, {Value()});
  for (const auto& p : peers) {
    std::vector<Value> inputs;
    const int x = as_int(p);
    if (cfg.is_server(x)) {
      for (const auto& l : logs) {
        inputs.push_back(repl_sync(l));
        inputs.push_back(repl_ack(l));
      }
    } else {
      for (int op : cfg.ops) inputs.push_back(repl_request(x, op));
    }
    ty.set_inputs("receive", p, inputs);
  }
  if (peers.empty()) ty.set_inputs("receive", iv(a), {repl_reply(-1)});
  ty.declare("detect", server_peers.empty() ? std::vector<Value>{iv(a)} : server_peers,
             {Value()});
  ty.declare("handle", {Value()}, {Value()});
  ty.declare("append", {Value()}, {Value()});

  const bool wait = cfg.wait_for_acks;
  std::vector<IOEvent<S>> events;
  events.push_back(
      {"send", false,
       [](const S& s, const Value& out, const Value&) {
         const int p = as_int(out.at(0));
         const Value& m = out.at(1);
         const std::string kind = repl_message_kind(m);
         if (kind == "sync") {
           return s.current.has_value() && !s.appended && s.to_sync.count(p) > 0 &&
                  repl_message_log(m) == s.pend;
         }
         if (kind == "ack") {
           return !s.acks.empty() && s.acks.front().first == p &&
                  s.acks.front().second == repl_message_log(m);
         }
         return s.appended && s.current.has_value() && s.current->first == p &&
                s.current->second == as_int(m.at(1));
       },
       [](const S& s, const Value& out, const Value&) {
         S t = s;
         const int p = as_int(out.at(0));
         const std::string kind = repl_message_kind(out.at(1));
         if (kind == "sync") {
           t.to_sync.erase(p);
         } else if (kind == "ack") {
           t.acks.erase(t.acks.begin());
         } else {
           t.current.reset();
           t.appended = false;
         }
         return t;
       },
       {"TCP_send", {"p", "m"}, "(p, m)", "", "", ""}});
  events.push_back(
      {"receive", false, [](const S&, const Value&, const Value&) { return true; },
       [](const S& s, const Value& out, const Value& in) {
         S t = s;
         const int p = as_int(out);
         const std::string kind = repl_message_kind(in);
         if (kind == "request") {
           if (as_int(in.at(1)) == p) t.requests.emplace_back(p, as_int(in.at(2)));
         } else if (kind == "sync") {
           if (!t.current && t.live.count(p) && p >= t.epoch) {
             t.log = t.pend = repl_message_log(in);
             t.epoch = p;
             t.acks.emplace_back(p, t.log);
           }
         } else if (kind == "ack") {
           if (t.current && t.to_ack.count(p) && repl_message_log(in) == t.pend) {
             t.to_ack.erase(p);
           }
         }
         return t;
       },
       {"TCP_receive", {"p"}, "p", "m", "", ""}});
  events.push_back({"detect", false,
                    [](const S& s, const Value& out, const Value&) {
                      return s.live.count(as_int(out)) > 0;
                    },
                    [](const S& s, const Value& out, const Value&) {
                      S t = s;
                      const int x = as_int(out);
                      t.live.erase(x);
                      t.to_sync.erase(x);
                      t.to_ack.erase(x);
                      return t;
                    },
                    {"detect_failure", {"q"}, "q", "", "q ∈ live(s)",
                     "live := live(s) \\ {q}"}});
  events.push_back({"handle", true,
                    [a](const S& s, const Value&, const Value&) {
                      return repl_is_primary(s, a) && !s.current && !s.requests.empty();
                    },
                    [a](const S& s, const Value&, const Value&) {
                      S t = s;
                      t.current = t.requests.front();
                      t.requests.erase(t.requests.begin());
                      t.pend = t.log;
                      t.pend.push_back(t.current->second);
                      t.to_sync = t.live;
                      t.to_sync.erase(a);
                      t.to_ack = t.to_sync;
                      t.appended = false;
                      return t;
                    },
                    {"handle", {}, "", "", "", ""}});
  events.push_back({"append", true,
                    [wait](const S& s, const Value&, const Value&) {
                      return s.current.has_value() && !s.appended && s.to_sync.empty() &&
                             (!wait || s.to_ack.empty());
                    },
                    [](const S& s, const Value&, const Value&) {
                      S t = s;
                      t.log = t.pend;
                      t.appended = true;
                      return t;
                    },
                    {"append", {}, "", "", "", "log := pend(s)"}});
  S init;
  init.live = to_set(cfg.server_ids());
  return IOGuardedES<S>(std::move(events), std::move(ty), init, "(a)");
}

IOGuardedES<ReplClient> repl_client_component(const ReplConfig& cfg, int c) {
  using S = ReplClient;
  Typing ty;
  std::vector<Value> sends;
  std::vector<Value> servers;
  std::vector<Value> replies;
  for (int s : cfg.server_ids()) {
    servers.push_back(iv(s));
    for (int op : cfg.ops) sends.push_back(Value::Tuple({iv(s), repl_request(c, op)}));
  }
  for (int op : cfg.ops) replies.push_back(repl_reply(op));
  if (sends.empty() || replies.empty()) {
    throw Error(ErrorCode::kConfig, "replication client needs servers and ops");
  }
  ty.declare("send", sends, {Value()});
  ty.declare("receive", servers, replies);
  ty.declare("detect", servers, {Value()});

  const std::vector<int> ops = cfg.ops;
  auto target = [](const S& s) { return s.live.empty() ? -1 : *s.live.begin(); };
  std::vector<IOEvent<S>> events;
  events.push_back(
      {"send", false,
       [ops, target](const S& s, const Value& out, const Value&) {
         const int to = as_int(out.at(0));
         const int op = as_int(out.at(1).at(2));
         if (to != target(s)) return false;
         if (!s.outstanding) return s.next_op < ops.size() && ops[s.next_op] == op;
         return *s.outstanding == op && !s.live.count(s.sent_to);
       },
       [](const S& s, const Value& out, const Value&) {
         S t = s;
         const int op = as_int(out.at(1).at(2));
         if (!t.outstanding) {
           t.outstanding = op;
           ++t.next_op;
         }
         t.sent_to = as_int(out.at(0));
         return t;
       },
       {"TCP_send", {"p", "m"}, "(p, m)", "", "", ""}});
  events.push_back({"receive", false,
                    [](const S&, const Value&, const Value&) { return true; },
                    [](const S& s, const Value&, const Value& in) {
                      S t = s;
                      if (t.outstanding && *t.outstanding == as_int(in.at(1))) {
                        t.outstanding.reset();
                        ++t.replies;
                      }
                      return t;
                    },
                    {"TCP_receive", {"p"}, "p", "m", "", ""}});
  events.push_back({"detect", false,
                    [](const S& s, const Value& out, const Value&) {
                      return s.live.count(as_int(out)) > 0;
                    },
                    [](const S& s, const Value& out, const Value&) {
                      S t = s;
                      t.live.erase(as_int(out));
                      return t;
                    },
                    {"detect_failure", {"q"}, "q", "", "q ∈ live(s)",
                     "live := live(s) \\ {q}"}});
  S init;
  init.live = to_set(cfg.server_ids());
  return IOGuardedES<S>(std::move(events), std::move(ty), init, "(c)");
}

namespace {

// Environment side of an I/O action of node x, or nullopt if the
// environment refuses it.
std::optional<std::pair<Event, ReplEnv>> env_part(const ReplConfig& cfg,
                                                  const ReplEnv& env, int x,
                                                  const Action& a) {
  if (cfg.is_server(x) && !env.live_env.count(x)) return std::nullopt;
  const Value vx = iv(x);
  if (a.bio == "send") {
    ReplEnv t = env;
    const int p = as_int(a.out.at(0));
    t.channels[{x, p}].push_back(a.out.at(1));
    return std::make_pair(ev("env_send", {vx, a.out.at(0), a.out.at(1)}), std::move(t));
  }
  if (a.bio == "receive") {
    const int p = as_int(a.out);
    auto it = env.channels.find({p, x});
    if (it == env.channels.end() || it->second.empty() || it->second.front() != a.in) {
      return std::nullopt;
    }
    ReplEnv t = env;
    auto& q = t.channels[{p, x}];
    q.erase(q.begin());
    if (q.empty()) t.channels.erase({p, x});
    return std::make_pair(ev("env_receive", {vx, a.out, a.in}), std::move(t));
  }
  if (a.bio == "detect") {
    if (env.live_env.count(as_int(a.out))) return std::nullopt;
    return std::make_pair(ev("env_detect", {vx, a.out}), env);
  }
  return std::make_pair(ev("alive", {vx}), env);
}

Event protocol_event(int x, const Action& a) {
  const Value vx = iv(x);
  if (a.bio == "send") return ev("send", {vx, a.out.at(0), a.out.at(1)});
  if (a.bio == "receive") return ev("receive", {vx, a.out, a.in});
  if (a.bio == "detect") return ev("detect", {vx, a.out});
  return ev(a.bio, {vx});
}

std::vector<Step<ReplEnv>> crash_steps(const ReplConfig& cfg, const ReplEnv& env) {
  std::vector<Step<ReplEnv>> out;
  if (env.crashes >= cfg.max_crashes) return out;
  for (int s : env.live_env) {
    ReplEnv t = env;
    t.live_env.erase(s);
    ++t.crashes;
    out.push_back({ev("crash", {iv(s)}), std::move(t)});
  }
  return out;
}

// Actions of a component at s whose input the environment could supply,
// with receive inputs resolved to the channel head.
template <class S>
std::vector<Action> candidate_actions(const IOGuardedES<S>& comp, const S& s,
                                      const ReplEnv& env, int x) {
  std::vector<Action> out;
  for (const auto& [bio, v] : comp.enabled_outputs(s)) {
    if (bio == "receive") {
      auto it = env.channels.find({as_int(v), x});
      if (it == env.channels.end() || it->second.empty()) continue;
      const Value& head = it->second.front();
      const auto& inputs = comp.typing().ty(bio, v);
      if (std::find(inputs.begin(), inputs.end(), head) == inputs.end()) continue;
      out.push_back({bio, v, head});
      continue;
    }
    for (const auto& w : comp.typing().ty(bio, v)) out.push_back({bio, v, w});
  }
  return out;
}

}  // namespace

ReplStack build_repl_stack(const ReplConfig& cfg) {
  if (cfg.servers < 1) throw Error(ErrorCode::kConfig, "need at least one server");
  ReplStack st;
  st.cfg = cfg;
  for (int a : cfg.server_ids()) {
    st.server_components.emplace_back(a, repl_server_component(cfg, a));
  }
  for (int c : cfg.client_ids()) {
    st.client_components.emplace_back(c, repl_client_component(cfg, c));
  }

  ReplEnv env0;
  env0.live_env = to_set(cfg.server_ids());
  ReplState init;
  for (const auto& [a, comp] : st.server_components) init.servers[a] = comp.initial();
  for (const auto& [c, comp] : st.client_components) init.clients[c] = comp.initial();
  init.env = env0;

  auto servers = st.server_components;
  auto clients = st.client_components;
  st.protocol = EventSystem<ReplState>(
      [cfg, servers, clients](const ReplState& s) {
        std::vector<Step<ReplState>> out;
        out.push_back({skip_event(), s});
        for (auto& cs : crash_steps(cfg, s.env)) {
          ReplState t = s;
          t.env = std::move(cs.target);
          out.push_back({std::move(cs.event), std::move(t)});
        }
        auto visit = [&](int x, const auto& comp, const auto& local, auto setter) {
          for (const auto& a : candidate_actions(comp, local, s.env, x)) {
            auto env_step = env_part(cfg, s.env, x, a);
            if (!env_step) continue;
            ReplState t = s;
            setter(t, comp.apply(local, a));
            t.env = std::move(env_step->second);
            out.push_back({protocol_event(x, a), std::move(t)});
          }
        };
        for (const auto& [a, comp] : servers) {
          visit(a, comp, s.servers.at(a),
                [a = a](ReplState& t, ReplServer v) { t.servers[a] = std::move(v); });
        }
        for (const auto& [c, comp] : clients) {
          visit(c, comp, s.clients.at(c),
                [c = c](ReplState& t, ReplClient v) { t.clients[c] = std::move(v); });
        }
        return out;
      },
      {init});

  std::vector<std::pair<int, Action>> all_sends;
  for (const auto& [a, comp] : st.server_components) {
    for (const auto& v : comp.typing().outputs("send")) all_sends.push_back({a, {"send", v, {}}});
  }
  for (const auto& [c, comp] : st.client_components) {
    for (const auto& v : comp.typing().outputs("send")) all_sends.push_back({c, {"send", v, {}}});
  }
  std::vector<int> nodes = cfg.server_ids();
  for (int c : cfg.client_ids()) nodes.push_back(c);
  st.env = EventSystem<ReplEnv>(
      [cfg, all_sends, nodes](const ReplEnv& env) {
        std::vector<Step<ReplEnv>> out;
        out.push_back({skip_event(), env});
        for (auto& cs : crash_steps(cfg, env)) out.push_back(std::move(cs));
        for (const auto& [x, a] : all_sends) {
          if (auto st = env_part(cfg, env, x, a)) {
            out.push_back({std::move(st->first), std::move(st->second)});
          }
        }
        for (const auto& [key, msgs] : env.channels) {
          if (msgs.empty()) continue;
          if (auto st = env_part(cfg, env, key.second,
                                 {"receive", iv(key.first), msgs.front()})) {
            out.push_back({std::move(st->first), std::move(st->second)});
          }
        }
        for (int x : nodes) {
          for (int q : cfg.server_ids()) {
            if (q == x) continue;
            if (auto st = env_part(cfg, env, x, {"detect", iv(q), {}})) {
              out.push_back({std::move(st->first), std::move(st->second)});
            }
          }
          if (cfg.is_server(x) && env.live_env.count(x)) {
            out.push_back({ev("alive", {iv(x)}), env});
          }
        }
        return out;
      },
      {env0});

  st.chi_e = {"chi_e", [](const Event& c, const Event& e) -> std::optional<Event> {
                if (is_skip(c)) {
                  if (is_skip(e)) return skip_event();
                  if (e.name == "crash") return e;
                  return std::nullopt;
                }
                // Tagged component events carry (x, out, in).
                if (c.params.size() != 3) return std::nullopt;
                const Value& x = c.params[0];
                const Value& out = c.params[1];
                const Value& in = c.params[2];
                if (c.name == "send" && e.name == "env_send" &&
                    e.params == std::vector<Value>{x, out.at(0), out.at(1)}) {
                  return ev("send", {x, out.at(0), out.at(1)});
                }
                if (c.name == "receive" && e.name == "env_receive" &&
                    e.params == std::vector<Value>{x, out, in}) {
                  return ev("receive", {x, out, in});
                }
                if (c.name == "detect" && e.name == "env_detect" &&
                    e.params == std::vector<Value>{x, out}) {
                  return ev("detect", {x, out});
                }
                if ((c.name == "handle" || c.name == "append") && e.name == "alive" &&
                    e.params == std::vector<Value>{x}) {
                  return ev(c.name, {x});
                }
                return std::nullopt;
              }};
  return st;
}

std::optional<ReplState> repl_step(const ReplStack& st, const ReplState& s, const Event& e) {
  if (is_skip(e)) return s;
  if (e.name == "crash") {
    if (e.params.size() != 1) return std::nullopt;
    for (auto& cs : crash_steps(st.cfg, s.env)) {
      if (cs.event != e) continue;
      ReplState t = s;
      t.env = std::move(cs.target);
      return t;
    }
    return std::nullopt;
  }
  if (e.params.empty() || !e.params[0].is_int()) return std::nullopt;
  const int x = as_int(e.params[0]);
  Action a;
  a.bio = e.name;
  if (e.name == "send" && e.params.size() == 3) {
    a.out = Value::Tuple({e.params[1], e.params[2]});
  } else if (e.name == "receive" && e.params.size() == 3) {
    a.out = e.params[1];
    a.in = e.params[2];
  } else if (e.name == "detect" && e.params.size() == 2) {
    a.out = e.params[1];
  } else if ((e.name == "handle" || e.name == "append") && e.params.size() == 1) {
  } else {
    return std::nullopt;
  }
  auto try_component = [&](const auto& comp, const auto& local,
                           auto setter) -> std::optional<ReplState> {
    if (!comp.typing().well_typed(a) || !comp.enabled(local, a.bio, a.out)) return std::nullopt;
    auto env_step = env_part(st.cfg, s.env, x, a);
    if (!env_step) return std::nullopt;
    ReplState t = s;
    setter(t, comp.apply(local, a));
    t.env = std::move(env_step->second);
    return t;
  };
  for (const auto& [id, comp] : st.server_components) {
    if (id != x) continue;
    return try_component(comp, s.servers.at(x),
                         [x](ReplState& t, ReplServer v) { t.servers[x] = std::move(v); });
  }
  for (const auto& [id, comp] : st.client_components) {
    if (id != x) continue;
    return try_component(comp, s.clients.at(x),
                         [x](ReplState& t, ReplClient v) { t.clients[x] = std::move(v); });
  }
  return std::nullopt;
}

StepInvariant<ReplState> ReplStack::consistency() const {
  const ReplConfig c = cfg;
  return {"backup_consistency", [c](const ReplState& s, const Event& e, const ReplState&) {
            if (e.name != "send") return true;
            const int a = as_int(e.params[0]);
            if (!c.is_server(a) || repl_message_kind(e.params[2]) != "reply") return true;
            return repl_backup_consistent(s, a);
          }};
}

std::vector<StateInvariant<ReplState>> ReplStack::state_invariants() const {
  const ReplConfig c = cfg;
  std::vector<StateInvariant<ReplState>> out;
  out.push_back({"live_env_subset_live", [](const ReplState& s) {
                   auto covers = [&](const std::set<int>& live) {
                     return std::includes(live.begin(), live.end(), s.env.live_env.begin(),
                                          s.env.live_env.end());
                   };
                   for (const auto& [a, sv] : s.servers) {
                     if (!covers(sv.live)) return false;
                   }
                   for (const auto& [x, cl] : s.clients) {
                     if (!covers(cl.live)) return false;
                   }
                   return true;
                 }});
  // Reconstructed: the remaining invariants below support backup consistency.
  out.push_back({"ordered_wrt_prefix", [](const ReplState& s) {
                   auto transit = [&](int from, int to, const char* kind) {
                     std::vector<ReplLog> logs;
                     auto it = s.env.channels.find({from, to});
                     if (it == s.env.channels.end()) return logs;
                     for (const auto& m : it->second) {
                       if (repl_message_kind(m) == kind) logs.push_back(repl_message_log(m));
                     }
                     return logs;
                   };
                   for (int a : s.env.live_env) {
                     for (int b : s.env.live_env) {
                       const auto& sb = s.servers.at(b);
                       if (a == b || sb.epoch != a) continue;
                       const auto& sa = s.servers.at(a);
                       std::vector<ReplLog> seq{sa.log};
                       for (auto& l : transit(b, a, "ack")) seq.push_back(std::move(l));
                       for (const auto& [p, l] : sb.acks) {
                         if (p == a) seq.push_back(l);
                       }
                       seq.push_back(sb.log);
                       for (auto& l : transit(a, b, "sync")) seq.push_back(std::move(l));
                       seq.push_back(sa.pend);
                       if (!ordered_wrt_prefix(seq)) return false;
                     }
                   }
                   return true;
                 }});
  out.push_back({"pend_extends_log", [](const ReplState& s) {
                   for (const auto& [a, sv] : s.servers) {
                     if (!is_prefix(sv.log, sv.pend)) return false;
                   }
                   return true;
                 }});
  out.push_back({"single_primary", [](const ReplState& s) {
                   if (s.env.live_env.empty()) return true;
                   const int lowest = *s.env.live_env.begin();
                   for (int a : s.env.live_env) {
                     if (a != lowest && repl_is_primary(s.servers.at(a), a)) return false;
                   }
                   return true;
                 }});
  out.push_back({"busy_server_is_primary", [](const ReplState& s) {
                   for (int a : s.env.live_env) {
                     const auto& sv = s.servers.at(a);
                     if (sv.current && !repl_is_primary(sv, a)) return false;
                   }
                   return true;
                 }});
  out.push_back({"replies_answer_requests", [c](const ReplState& s) {
                   for (const auto& [key, msgs] : s.env.channels) {
                     if (!s.clients.count(key.second)) continue;
                     const auto& cl = s.clients.at(key.second);
                     for (const auto& m : msgs) {
                       if (repl_message_kind(m) != "reply") continue;
                       const int op = as_int(m.at(1));
                       const auto sent_end = c.ops.begin() + static_cast<long>(cl.next_op);
                       if (std::find(c.ops.begin(), sent_end, op) == sent_end) return false;
                     }
                   }
                   return true;
                 }});
  return out;
}

std::vector<StepInvariant<ReplState>> ReplStack::step_invariants() const {
  std::vector<StepInvariant<ReplState>> out{consistency()};
  out.push_back({"log_grows_within_epoch",
                 [](const ReplState& s, const Event&, const ReplState& t) {
                   for (const auto& [a, sv] : s.servers) {
                     const auto& tv = t.servers.at(a);
                     if (sv.epoch == tv.epoch && !is_prefix(sv.log, tv.log)) return false;
                   }
                   return true;
                 }});
  out.push_back({"crash_permanent", [](const ReplState& s, const Event&, const ReplState& t) {
                   return std::includes(s.env.live_env.begin(), s.env.live_env.end(),
                                        t.env.live_env.begin(), t.env.live_env.end());
                 }});
  return out;
}

EventSystem<ReplRecomposed> ReplStack::recompose() const {
  std::vector<FamilyMember<ReplServer>> sf;
  for (const auto& [a, comp] : server_components) {
    sf.push_back({Value::Int(a), comp.to_event_system(true)});
  }
  std::vector<FamilyMember<ReplClient>> cf;
  for (const auto& [c, comp] : client_components) {
    cf.push_back({Value::Int(c), comp.to_event_system(true)});
  }
  auto nodes = compose_parallel(interleave_family(std::move(sf)),
                                interleave_family(std::move(cf)), interleaving());
  return compose_parallel(nodes, env, chi_e);
}

}  // namespace igloo
