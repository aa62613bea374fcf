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

#include "igloo/protocols/leader.h"

#include <algorithm>
#include <string>

#include "igloo/error.h"

namespace igloo {

namespace {

Value iv(int x) { return Value::Int(x); }
int as_id(const Value& v) { return static_cast<int>(v.as_int()); }

std::vector<std::vector<Value>> domain_ids(const RingConfig& ring) {
  std::vector<std::vector<Value>> out;
  for (int i : ring.ids) out.push_back({iv(i)});
  return out;
}

std::vector<std::vector<Value>> domain_id_pairs(const RingConfig& ring) {
  std::vector<std::vector<Value>> out;
  for (int i : ring.ids) {
    for (int j : ring.ids) out.push_back({iv(i), iv(j)});
  }
  return out;
}

std::vector<std::vector<Value>> domain_sends(const RingConfig& ring) {
  std::vector<std::vector<Value>> out;
  for (int i : ring.ids) {
    for (int j : ring.ids) {
      for (int a : ring.addresses()) out.push_back({iv(i), iv(j), iv(a)});
    }
  }
  return out;
}

template <class S>
GuardedEvent<S> guarded(std::string name, std::vector<std::vector<Value>> domain,
                        std::function<bool(const S&, const std::vector<Value>&)> g,
                        std::function<S(const S&, const std::vector<Value>&)> u) {
  return GuardedEvent<S>{std::move(name), std::move(domain), std::move(g),
                         std::move(u)};
}

EventSystem<AbstractLeaderState> abstract_model(const RingConfig& ring,
                                                bool with_guard) {
  using S = AbstractLeaderState;
  GuardedEventSystem<S> ges;
  S init;
  for (int i : ring.ids) init.leader[i] = false;
  ges.initial = {init};
  ges.events.push_back(guarded<S>(
      "elect", domain_ids(ring),
      [with_guard](const S& s, const std::vector<Value>& p) {
        if (!with_guard) return true;
        const int i = as_id(p[0]);
        for (const auto& [j, flag] : s.leader) {
          if (flag && j != i) return false;
        }
        return true;
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.leader[as_id(p[0])] = true;
        return t;
      }));
  return ges.to_event_system();
}

EventSystem<ProtocolLeaderState> protocol_model(const RingConfig& ring) {
  using S = ProtocolLeaderState;
  GuardedEventSystem<S> ges;
  S init;
  for (int i : ring.ids) init.nodes[i] = ProtocolNode{};
  ges.initial = {init};
  ges.events.push_back(guarded<S>(
      "setup", domain_ids(ring),
      [](const S&, const std::vector<Value>&) { return true; },
      [ring](const S& s, const std::vector<Value>& p) {
        S t = s;
        const int i = as_id(p[0]);
        t.nodes[ring.next_of(i)].chan.insert(i);
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "accept", domain_id_pairs(ring),
      [](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        const int j = as_id(p[1]);
        return s.nodes.at(i).chan.count(j) > 0 && j > i;
      },
      [ring](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.nodes[ring.next_of(as_id(p[0]))].chan.insert(as_id(p[1]));
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "elect", domain_ids(ring),
      [](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        return s.nodes.at(i).chan.count(i) > 0;
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.nodes[as_id(p[0])].leader = true;
        return t;
      }));
  return ges.to_event_system();
}

EventSystem<InterfaceLeaderState> interface_model(const RingConfig& ring) {
  using S = InterfaceLeaderState;
  GuardedEventSystem<S> ges;
  S init;
  for (int i : ring.ids) init.nodes[i] = LeaderNode{};
  for (int a : ring.addresses()) init.chan[a] = {};
  ges.initial = {init};
  ges.events.push_back(guarded<S>(
      "setup", domain_ids(ring),
      [](const S&, const std::vector<Value>&) { return true; },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        const int i = as_id(p[0]);
        t.nodes[i].obuf.insert(i);
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "receive", domain_id_pairs(ring),
      [ring](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        return s.chan.at(ring.addr_of(i)).count(as_id(p[1])) > 0;
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.nodes[as_id(p[0])].ibuf.insert(as_id(p[1]));
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "accept", domain_id_pairs(ring),
      [](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        const int j = as_id(p[1]);
        return s.nodes.at(i).ibuf.count(j) > 0 && j > i;
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.nodes[as_id(p[0])].obuf.insert(as_id(p[1]));
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "send", domain_sends(ring),
      [ring](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        return s.nodes.at(i).obuf.count(as_id(p[1])) > 0 &&
               as_id(p[2]) == ring.addr_of(ring.next_of(i));
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.chan[as_id(p[2])].insert(as_id(p[1]));
        return t;
      }));
  ges.events.push_back(guarded<S>(
      "elect", domain_ids(ring),
      [](const S& s, const std::vector<Value>& p) {
        const int i = as_id(p[0]);
        return s.nodes.at(i).ibuf.count(i) > 0;
      },
      [](const S& s, const std::vector<Value>& p) {
        S t = s;
        t.nodes[as_id(p[0])].leader = true;
        return t;
      }));
  return ges.to_event_system();
}

Mediator make_pi_ip(bool always_accept) {
  return {always_accept ? "pi_ip_always_accept" : "pi_ip",
          [always_accept](const Event& e) {
            if (e.name == "send") {
              if (!always_accept && e.params[0] == e.params[1]) {
                return Event{"setup", {e.params[0]}};
              }
              return Event{"accept", {e.params[0], e.params[1]}};
            }
            if (e.name == "elect") return e;
            return skip_event();
          }};
}

}  // namespace

RingConfig RingConfig::Sorted(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  RingConfig cfg;
  cfg.ids = ids;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    cfg.next[ids[k]] = ids[(k + 1) % ids.size()];
    cfg.addr[ids[k]] = 1000 + ids[k];
  }
  cfg.validate();
  return cfg;
}

void RingConfig::validate() const {
  if (ids.empty()) throw Error(ErrorCode::kInvalidRing, "ring has no nodes");
  std::set<int> idset(ids.begin(), ids.end());
  if (idset.size() != ids.size() || !std::is_sorted(ids.begin(), ids.end())) {
    throw Error(ErrorCode::kInvalidRing, "ids must be sorted and distinct");
  }
  if (next.size() != ids.size() || addr.size() != ids.size()) {
    throw Error(ErrorCode::kInvalidRing, "next and addr must cover every id");
  }
  for (int i : ids) {
    if (!next.count(i) || !addr.count(i) || !idset.count(next.at(i))) {
      throw Error(ErrorCode::kInvalidRing,
                  "next or addr undefined at " + std::to_string(i));
    }
  }
  std::size_t len = 0;
  int k = ids.front();
  do {
    k = next.at(k);
    ++len;
  } while (k != ids.front() && len <= ids.size());
  if (len != ids.size()) {
    throw Error(ErrorCode::kInvalidRing, "next is not a single cycle");
  }
  std::set<int> addrs;
  for (const auto& [i, a] : addr) addrs.insert(a);
  if (addrs.size() != addr.size()) {
    throw Error(ErrorCode::kInvalidRing, "addr is not injective");
  }
}

std::vector<int> RingConfig::addresses() const {
  std::vector<int> out;
  for (const auto& [i, a] : addr) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

void to_json(nlohmann::json& j, const RingConfig& cfg) {
  j = nlohmann::json::object();
  j["ids"] = cfg.ids;
  for (const auto& [i, n] : cfg.next) j["next"][std::to_string(i)] = n;
  for (const auto& [i, a] : cfg.addr) j["addr"][std::to_string(i)] = a;
}

RingConfig ring_from_json(const nlohmann::json& j) {
  if (!j.contains("ids") || !j["ids"].is_array()) {
    throw Error(ErrorCode::kConfig, "ring needs an ids array");
  }
  RingConfig cfg = RingConfig::Sorted(j["ids"].get<std::vector<int>>());
  if (j.contains("next")) {
    cfg.next.clear();
    for (const auto& [k, v] : j["next"].items()) cfg.next[std::stoi(k)] = v.get<int>();
  }
  if (j.contains("addr")) {
    cfg.addr.clear();
    for (const auto& [k, v] : j["addr"].items()) cfg.addr[std::stoi(k)] = v.get<int>();
  }
  cfg.validate();
  return cfg;
}

void to_json(nlohmann::json& j, const AbstractLeaderState& s) {
  j = nlohmann::json::object();
  for (const auto& [i, flag] : s.leader) j[std::to_string(i)] = {{"leader", flag}};
}

void to_json(nlohmann::json& j, const ProtocolLeaderState& s) {
  j = nlohmann::json::object();
  for (const auto& [i, n] : s.nodes) {
    j[std::to_string(i)] = {{"leader", n.leader}, {"chan", n.chan}};
  }
}

void to_json(nlohmann::json& j, const LeaderNode& s) {
  j = {{"leader", s.leader}, {"ibuf", s.ibuf}, {"obuf", s.obuf}};
}

void to_json(nlohmann::json& j, const InterfaceLeaderState& s) {
  j = nlohmann::json::object();
  for (const auto& [i, n] : s.nodes) j["nodes"][std::to_string(i)] = n;
  for (const auto& [a, c] : s.chan) j["chan"][std::to_string(a)] = c;
}

void to_json(nlohmann::json& j, const LeaderEnvState& s) {
  j = nlohmann::json::object();
  for (const auto& [a, c] : s.chan) j["chan"][std::to_string(a)] = c;
}

LeaderStack build_leader_stack(const RingConfig& ring) {
  ring.validate();
  LeaderStack st{
      ring,
      abstract_model(ring, true),
      protocol_model(ring),
      interface_model(ring),
      {"R_pa",
       [](const AbstractLeaderState& a, const ProtocolLeaderState& c) {
         for (const auto& [i, n] : c.nodes) {
           auto it = a.leader.find(i);
           if (it == a.leader.end() || it->second != n.leader) return false;
         }
         return a.leader.size() == c.nodes.size();
       }},
      {"R_ip",
       [ring](const ProtocolLeaderState& a, const InterfaceLeaderState& c) {
         for (int i : ring.ids) {
           const auto& pn = a.nodes.at(i);
           if (pn.leader != c.nodes.at(i).leader) return false;
           if (pn.chan != c.chan.at(ring.addr_of(i))) return false;
         }
         return true;
       }},
      {"pi_pa",
       [](const Event& e) { return e.name == "elect" ? e : skip_event(); }},
      make_pi_ip(false)};
  return st;
}

EventSystem<AbstractLeaderState> leader_abstract_without_guard(const RingConfig& ring) {
  return abstract_model(ring, false);
}

Mediator leader_pi_pa_drop_elect() {
  return {"pi_pa_drop_elect", [](const Event&) { return skip_event(); }};
}

Mediator leader_pi_ip_always_accept() { return make_pi_ip(true); }

TraceProperty leader_uniqueness() {
  return {"U0", [](const Trace& t) {
            std::set<Value> elected;
            for (const auto& e : t) {
              if (e.name == "elect" && !e.params.empty()) elected.insert(e.params[0]);
            }
            return elected.size() <= 1;
          }};
}

Mediator leader_pi_hat(const LeaderStack& stack) {
  return compose_mediators(stack.pi_pa, stack.pi_ip);
}

bool leader_channel_invariant(const RingConfig& ring, const ProtocolLeaderState& s) {
  for (const auto& [j, node] : s.nodes) {
    for (int i : node.chan) {
      for (int k = ring.next_of(i); k != j; k = ring.next_of(k)) {
        if (!(k < i)) return false;
      }
    }
  }
  return true;
}

bool leader_buffer_invariant(const RingConfig& ring, const InterfaceLeaderState& s) {
  for (const auto& [i, node] : s.nodes) {
    const auto& chan = s.chan.at(ring.addr_of(i));
    for (int j : node.ibuf) {
      if (!chan.count(j)) return false;
    }
  }
  return true;
}

bool leader_is_max(const RingConfig& ring, const std::map<int, bool>& leader) {
  for (const auto& [i, flag] : leader) {
    if (flag && i != ring.max_id()) return false;
  }
  return true;
}

IOGuardedES<LeaderNode> leader_component(const RingConfig& ring, int i, int a) {
  using S = LeaderNode;
  std::vector<Value> ids;
  for (int k : ring.ids) ids.push_back(iv(k));
  std::vector<Value> sends;
  for (int k : ring.ids) {
    for (int addr : ring.addresses()) sends.push_back(Value::Tuple({iv(k), iv(addr)}));
  }
  Typing ty;
  ty.declare("setup", {Value()}, {Value()});
  ty.declare("receive", {Value()}, ids);
  ty.declare("accept", ids, {Value()});
  ty.declare("send", sends, {Value()});
  ty.declare("elect", {Value()}, {Value()});

  std::vector<IOEvent<S>> events;
  events.push_back({"setup", true,
                    [](const S&, const Value&, const Value&) { return true; },
                    [i](const S& s, const Value&, const Value&) {
                      S t = s;
                      t.obuf.insert(i);
                      return t;
                    },
                    {"setup", {}, "", "", "", "obuf := obuf(s) ∪ {i}"}});
  events.push_back({"receive", false,
                    [](const S&, const Value&, const Value&) { return true; },
                    [](const S& s, const Value&, const Value& in) {
                      S t = s;
                      t.ibuf.insert(as_id(in));
                      return t;
                    },
                    {"UDP_receive_int", {}, "", "m", "", "ibuf := ibuf(s) ∪ {m}"}});
  events.push_back({"accept", true,
                    [i](const S& s, const Value& out, const Value&) {
                      const int m = as_id(out);
                      return s.ibuf.count(m) > 0 && m > i;
                    },
                    [](const S& s, const Value& out, const Value&) {
                      S t = s;
                      t.obuf.insert(as_id(out));
                      return t;
                    },
                    {"accept", {"m"}, "m", "", "m ∈ ibuf(s) ∧ i < m",
                     "obuf := obuf(s) ∪ {m}"}});
  events.push_back({"send", false,
                    [a](const S& s, const Value& out, const Value&) {
                      return s.obuf.count(as_id(out.at(0))) > 0 &&
                             as_id(out.at(1)) == a;
                    },
                    [](const S& s, const Value&, const Value&) { return s; },
                    {"UDP_send_int", {"m", "a'"}, "(m, a')", "",
                     "m ∈ obuf(s) ∧ a' = a", ""}});
  events.push_back({"elect", true,
                    [i](const S& s, const Value&, const Value&) {
                      return s.ibuf.count(i) > 0;
                    },
                    [](const S& s, const Value&, const Value&) {
                      S t = s;
                      t.leader = true;
                      return t;
                    },
                    {"elect", {}, "", "", "i ∈ ibuf(s)", "leader := true"}});
  return IOGuardedES<S>(std::move(events), std::move(ty), S{}, "(i, a)");
}

LeaderDecomposition decompose_leader(const RingConfig& ring) {
  ring.validate();
  LeaderDecomposition d{ring, {}, {}, {}, {}};
  for (int i : ring.ids) {
    const int a = ring.addr_of(ring.next_of(i));
    d.gamma[i] = {i, a};
    d.components.emplace_back(i, leader_component(ring, i, a));
  }

  using E = LeaderEnvState;
  GuardedEventSystem<E> env;
  E init;
  for (int a : ring.addresses()) init.chan[a] = {};
  env.initial = {init};
  env.events.push_back(guarded<E>(
      "env_receive", domain_id_pairs(ring),
      [ring](const E& s, const std::vector<Value>& p) {
        return s.chan.at(ring.addr_of(as_id(p[0]))).count(as_id(p[1])) > 0;
      },
      [](const E& s, const std::vector<Value>&) { return s; }));
  env.events.push_back(guarded<E>(
      "env_send", domain_sends(ring),
      [](const E&, const std::vector<Value>&) { return true; },
      [](const E& s, const std::vector<Value>& p) {
        E t = s;
        t.chan[as_id(p[2])].insert(as_id(p[1]));
        return t;
      }));
  d.env = env.to_event_system();

  d.chi_e = {"chi_e", [](const Event& c, const Event& e) -> std::optional<Event> {
               if (is_skip(c)) {
                 if (is_skip(e)) return skip_event();
                 return std::nullopt;
               }
               // Tagged component events carry (i, out, in).
               if (c.params.size() != 3) return std::nullopt;
               const Value& i = c.params[0];
               const Value& out = c.params[1];
               const Value& in = c.params[2];
               if (c.name == "receive") {
                 if (e.name == "env_receive" && e.params == std::vector<Value>{i, in}) {
                   return Event{"receive", {i, in}};
                 }
                 return std::nullopt;
               }
               if (c.name == "send") {
                 if (e.name == "env_send" && out.is_tuple() &&
                     e.params == std::vector<Value>{i, out.at(0), out.at(1)}) {
                   return Event{"send", {i, out.at(0), out.at(1)}};
                 }
                 return std::nullopt;
               }
               if (!is_skip(e)) return std::nullopt;
               if (c.name == "setup" || c.name == "elect") return Event{c.name, {i}};
               if (c.name == "accept") return Event{"accept", {i, out}};
               return std::nullopt;
             }};
  return d;
}

EventSystem<std::pair<std::vector<LeaderNode>, LeaderEnvState>>
LeaderDecomposition::recompose() const {
  std::vector<FamilyMember<LeaderNode>> family;
  for (const auto& [i, comp] : components) {
    family.push_back({Value::Int(i), comp.to_event_system(true)});
  }
  return compose_parallel(interleave_family(std::move(family)), env, chi_e);
}

}  // namespace igloo
