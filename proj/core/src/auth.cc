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

#include "igloo/protocols/auth.h"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "igloo/error.h"

namespace igloo {

MsgTerm MsgTerm::Agent(int a) {
  MsgTerm t;
  t.kind_ = Kind::kAgent;
  t.a_ = a;
  return t;
}

MsgTerm MsgTerm::Nonce(int owner, int index) {
  MsgTerm t;
  t.kind_ = Kind::kNonce;
  t.a_ = owner;
  t.b_ = index;
  return t;
}

MsgTerm MsgTerm::PubKey(int a) {
  MsgTerm t;
  t.kind_ = Kind::kPubKey;
  t.a_ = a;
  return t;
}

MsgTerm MsgTerm::PriKey(int a) {
  MsgTerm t;
  t.kind_ = Kind::kPriKey;
  t.a_ = a;
  return t;
}

MsgTerm MsgTerm::Pair(MsgTerm left, MsgTerm right) {
  MsgTerm t;
  t.kind_ = Kind::kPair;
  t.kids_ = std::make_shared<const std::pair<MsgTerm, MsgTerm>>(std::move(left),
                                                                std::move(right));
  return t;
}

MsgTerm MsgTerm::Sign(MsgTerm key, MsgTerm body) {
  if (!key.is(Kind::kPriKey)) throw std::invalid_argument("Sign needs a private key");
  MsgTerm t;
  t.kind_ = Kind::kSign;
  t.a_ = key.agent();
  t.kids_ = std::make_shared<const std::pair<MsgTerm, MsgTerm>>(std::move(key),
                                                                std::move(body));
  return t;
}

MsgTerm MsgTerm::Junk() { return MsgTerm(); }

const MsgTerm& MsgTerm::left() const {
  if (!kids_) throw std::logic_error("term has no subterms: " + to_string());
  return kids_->first;
}

const MsgTerm& MsgTerm::right() const {
  if (!kids_) throw std::logic_error("term has no subterms: " + to_string());
  return kids_->second;
}

std::strong_ordering MsgTerm::operator<=>(const MsgTerm& other) const {
  if (auto c = kind_ <=> other.kind_; c != 0) return c;
  if (auto c = a_ <=> other.a_; c != 0) return c;
  if (auto c = b_ <=> other.b_; c != 0) return c;
  if (kids_ == other.kids_) return std::strong_ordering::equal;
  if (!kids_) return std::strong_ordering::less;
  if (!other.kids_) return std::strong_ordering::greater;
  if (auto c = kids_->first <=> other.kids_->first; c != 0) return c;
  return kids_->second <=> other.kids_->second;
}

std::string agent_name(int a) {
  if (a >= 0 && a < 26) return std::string(1, static_cast<char>('A' + a));
  return "agent" + std::to_string(a);
}

std::string MsgTerm::to_string() const {
  switch (kind_) {
    case Kind::kAgent:
      return agent_name(a_);
    case Kind::kNonce:
      return "N(" + agent_name(a_) + "," + std::to_string(b_) + ")";
    case Kind::kPubKey:
      return "pk(" + agent_name(a_) + ")";
    case Kind::kPriKey:
      return "sk(" + agent_name(a_) + ")";
    case Kind::kPair:
      return "<" + left().to_string() + ", " + right().to_string() + ">";
    case Kind::kSign:
      return "[" + right().to_string() + "]" + left().to_string();
    case Kind::kJunk:
      return "Junk";
  }
  return "?";
}

Value MsgTerm::to_value() const {
  switch (kind_) {
    case Kind::kAgent:
      return Value::Tuple({Value::Sym("agent"), Value::Int(a_)});
    case Kind::kNonce:
      return Value::Tuple({Value::Sym("nonce"), Value::Int(a_), Value::Int(b_)});
    case Kind::kPubKey:
      return Value::Tuple({Value::Sym("pk"), Value::Int(a_)});
    case Kind::kPriKey:
      return Value::Tuple({Value::Sym("sk"), Value::Int(a_)});
    case Kind::kPair:
      return Value::Tuple({Value::Sym("pair"), left().to_value(), right().to_value()});
    case Kind::kSign:
      return Value::Tuple({Value::Sym("sign"), left().to_value(), right().to_value()});
    case Kind::kJunk:
      return Value::Sym("junk");
  }
  return Value();
}

MsgTerm MsgTerm::from_value(const Value& v) {
  if (v.is_symbol() && v.as_symbol() == "junk") return Junk();
  if (!v.is_tuple() || v.elements().empty() || !v.at(0).is_symbol()) {
    throw std::invalid_argument("not a message term: " + v.to_string());
  }
  const std::string& tag = v.at(0).as_symbol();
  auto num = [&](std::size_t i) { return static_cast<int>(v.at(i).as_int()); };
  if (tag == "agent") return Agent(num(1));
  if (tag == "nonce") return Nonce(num(1), num(2));
  if (tag == "pk") return PubKey(num(1));
  if (tag == "sk") return PriKey(num(1));
  if (tag == "pair") return Pair(from_value(v.at(1)), from_value(v.at(2)));
  if (tag == "sign") return Sign(from_value(v.at(1)), from_value(v.at(2)));
  throw std::invalid_argument("unknown term tag: " + tag);
}

void to_json(nlohmann::json& j, const MsgTerm& t) { j = t.to_string(); }

namespace {

void add_subterms(const MsgTerm& t, TermSet& out) {
  if (!out.insert(t).second) return;
  if (t.is(MsgTerm::Kind::kPair) || t.is(MsgTerm::Kind::kSign)) {
    add_subterms(t.left(), out);
    add_subterms(t.right(), out);
  }
}

}  // namespace

TermSet subterm_closure(const TermSet& terms) {
  TermSet out;
  for (const auto& t : terms) add_subterms(t, out);
  return out;
}

TermSet dy_close_unchecked(TermSet known, const TermSet& universe) {
  using K = MsgTerm::Kind;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<MsgTerm> learned;
    for (const auto& t : known) {
      if (t.is(K::kPair)) {
        learned.push_back(t.left());
        learned.push_back(t.right());
      } else if (t.is(K::kSign)) {
        learned.push_back(t.right());
      }
    }
    for (const auto& u : universe) {
      if (known.count(u)) continue;
      if (u.is(K::kPubKey) ||
          ((u.is(K::kPair) || u.is(K::kSign)) && known.count(u.left()) &&
           known.count(u.right()))) {
        learned.push_back(u);
      }
    }
    for (auto& t : learned) {
      if (known.insert(std::move(t)).second) changed = true;
    }
  }
  return known;
}

DYKnowledge dy_closure(const DYKnowledge& known, const TermSet& universe) {
  for (const auto& u : universe) {
    if (u.is(MsgTerm::Kind::kPair) || u.is(MsgTerm::Kind::kSign)) {
      if (!universe.count(u.left()) || !universe.count(u.right())) {
        throw Error(ErrorCode::kUniverseNotClosed,
                    "missing subterm of " + u.to_string());
      }
    }
  }
  for (const auto& t : known.known) {
    if (!universe.count(t)) {
      throw Error(ErrorCode::kUniverseNotClosed,
                  "known term outside universe: " + t.to_string());
    }
  }
  return {dy_close_unchecked(known.known, universe)};
}

AuthConfig auth_config_from_json(const nlohmann::json& j) {
  AuthConfig cfg;
  cfg.agents = j.value("agents", cfg.agents);
  cfg.max_runs = j.value("max_runs", cfg.max_runs);
  cfg.sign_initiator_name = j.value("sign_initiator_name", cfg.sign_initiator_name);
  if (cfg.agents < 1 || cfg.agents > 8 || cfg.max_runs < 1 || cfg.max_runs > 3) {
    throw Error(ErrorCode::kConfig, "auth needs 1..8 agents and 1..3 runs");
  }
  return cfg;
}

void to_json(nlohmann::json& j, const AuthConfig& cfg) {
  j = {{"agents", cfg.agents},
       {"max_runs", cfg.max_runs},
       {"sign_initiator_name", cfg.sign_initiator_name}};
}

void to_json(nlohmann::json& j, const AuthRun& r) {
  j = {{"stage", r.stage}, {"partner", r.partner}};
  j["own_nonce"] = r.own_nonce ? nlohmann::json(*r.own_nonce) : nlohmann::json(nullptr);
  j["peer_nonce"] = r.peer_nonce ? nlohmann::json(*r.peer_nonce) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const AuthState& s) {
  j = nlohmann::json::object();
  for (const auto& [k, r] : s.initiators) {
    j["initiators"][agent_name(k.first) + "/" + std::to_string(k.second)] = r;
  }
  for (const auto& [k, r] : s.responders) {
    j["responders"][agent_name(k.first) + "/" + std::to_string(k.second)] = r;
  }
  j["ik_size"] = s.ik.size();
}

void to_json(nlohmann::json& j, const AuthLocal& s) {
  j = {{"run", s.run}, {"ibuf", s.ibuf}};
}

void to_json(nlohmann::json& j, const AuthEnv& s) { j = {{"ik_size", s.ik.size()}}; }

MsgTerm auth_m1(int a, int b, const MsgTerm& na) {
  return MsgTerm::Pair(MsgTerm::Agent(a), MsgTerm::Pair(MsgTerm::Agent(b), na));
}

MsgTerm auth_m2(const AuthConfig& cfg, int b, int a, const MsgTerm& na,
                const MsgTerm& nb) {
  const MsgTerm payload =
      cfg.sign_initiator_name
          ? MsgTerm::Pair(nb, MsgTerm::Pair(na, MsgTerm::Agent(a)))
          : MsgTerm::Pair(nb, na);
  return MsgTerm::Sign(MsgTerm::PriKey(b), payload);
}

MsgTerm auth_nonce(const AuthConfig& cfg, bool initiator, int agent, int run) {
  return MsgTerm::Nonce(agent, initiator ? run : cfg.max_runs + run);
}

namespace {

std::vector<int> all_agents(const AuthConfig& cfg) {
  std::vector<int> out;
  for (int a = 0; a <= cfg.attacker(); ++a) out.push_back(a);
  return out;
}

std::vector<MsgTerm> all_nonces(const AuthConfig& cfg) {
  std::vector<MsgTerm> out;
  for (int a = 0; a < cfg.agents; ++a) {
    for (int k = 0; k < 2 * cfg.max_runs; ++k) out.push_back(MsgTerm::Nonce(a, k));
  }
  out.push_back(MsgTerm::Nonce(cfg.attacker(), 0));
  return out;
}

bool is_m1_shape(const MsgTerm& t) {
  using K = MsgTerm::Kind;
  return t.is(K::kPair) && t.left().is(K::kAgent) && t.right().is(K::kPair) &&
         t.right().left().is(K::kAgent) && t.right().right().is(K::kNonce);
}

Value run_index(const char* role, int agent, int run) {
  return Value::Tuple({Value::Sym(role), Value::Int(agent), Value::Int(run)});
}

Value tv(const MsgTerm& t) { return t.to_value(); }

Event ev(std::string name, std::vector<Value> params) {
  return Event{std::move(name), std::move(params)};
}

// Closure of ik plus one message, memoized per stack.
class ClosureCache {
 public:
  explicit ClosureCache(TermSet universe) : universe_(std::move(universe)) {}

  TermSet add(const TermSet& ik, const MsgTerm& m) {
    if (ik.count(m)) return ik;
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(ik, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    TermSet grown = ik;
    grown.insert(m);
    grown = dy_close_unchecked(std::move(grown), universe_);
    memo_.emplace(std::move(key), grown);
    return grown;
  }

 private:
  TermSet universe_;
  std::mutex mu_;
  std::map<std::pair<TermSet, MsgTerm>, TermSet> memo_;
};

}  // namespace

TermSet auth_universe(const AuthConfig& cfg) {
  TermSet base;
  const auto agents = all_agents(cfg);
  const auto nonces = all_nonces(cfg);
  base.insert(MsgTerm::Junk());
  for (int a : agents) {
    base.insert(MsgTerm::PubKey(a));
    base.insert(MsgTerm::PriKey(a));
  }
  for (int x : agents) {
    for (int y : agents) {
      for (const auto& n : nonces) base.insert(auth_m1(x, y, n));
    }
  }
  for (int z : agents) {
    for (int x : agents) {
      for (const auto& n1 : nonces) {
        for (const auto& n2 : nonces) base.insert(auth_m2(cfg, z, x, n2, n1));
      }
    }
  }
  return subterm_closure(base);
}

TermSet auth_initial_knowledge(const AuthConfig& cfg) {
  TermSet ik{MsgTerm::Junk(), MsgTerm::PriKey(cfg.attacker()),
             MsgTerm::Nonce(cfg.attacker(), 0)};
  for (int a : all_agents(cfg)) {
    ik.insert(MsgTerm::Agent(a));
    ik.insert(MsgTerm::PubKey(a));
  }
  return dy_closure({ik}, auth_universe(cfg)).known;
}

AuthStack build_auth_stack(const AuthConfig& cfg) {
  using K = MsgTerm::Kind;
  AuthStack st;
  st.cfg = cfg;
  st.universe = auth_universe(cfg);
  auto cache = std::make_shared<ClosureCache>(st.universe);
  const auto agents = all_agents(cfg);
  const auto nonces = all_nonces(cfg);

  AuthState init;
  for (int a = 0; a < cfg.agents; ++a) {
    for (int k = 0; k < cfg.max_runs; ++k) {
      init.initiators[{a, k}] = {};
      init.responders[{a, k}] = {};
    }
  }
  init.ik = auth_initial_knowledge(cfg);

  st.protocol = EventSystem<AuthState>(
      [cfg, cache, agents](const AuthState& s) {
        std::vector<Step<AuthState>> out;
        out.push_back({skip_event(), s});
        for (const auto& [key, run] : s.initiators) {
          const auto [a, k] = key;
          const MsgTerm na = auth_nonce(cfg, true, a, k);
          if (run.stage == 0) {
            for (int b : agents) {
              if (b == a) continue;
              AuthState t = s;
              t.initiators[key] = AuthRun{1, b, na, std::nullopt};
              t.ik = cache->add(s.ik, auth_m1(a, b, na));
              out.push_back({ev("i_send", {Value::Int(a), Value::Int(k), Value::Int(b), tv(na)}),
                             std::move(t)});
            }
          } else if (run.stage == 1) {
            for (const auto& m : s.ik) {
              if (!m.is(K::kSign) || m.agent() != run.partner) continue;
              const MsgTerm& body = m.right();
              if (!body.is(K::kPair) || !body.left().is(K::kNonce)) continue;
              const MsgTerm nb = body.left();
              if (m != auth_m2(cfg, run.partner, a, na, nb)) continue;
              AuthState t = s;
              t.initiators[key].stage = 2;
              t.initiators[key].peer_nonce = nb;
              out.push_back({ev("i_commit", {Value::Int(a), Value::Int(k),
                                             Value::Int(run.partner), tv(na), tv(nb)}),
                             std::move(t)});
            }
          }
        }
        for (const auto& [key, run] : s.responders) {
          if (run.stage != 0) continue;
          const auto [b, k] = key;
          const MsgTerm nb = auth_nonce(cfg, false, b, k);
          for (const auto& m : s.ik) {
            if (!is_m1_shape(m) || m.right().left().agent() != b) continue;
            const int x = m.left().agent();
            if (x == b) continue;
            const MsgTerm na = m.right().right();
            AuthState t = s;
            t.responders[key] = AuthRun{1, x, nb, na};
            t.ik = cache->add(s.ik, auth_m2(cfg, b, x, na, nb));
            out.push_back({ev("r_respond", {Value::Int(b), Value::Int(k), Value::Int(x),
                                            tv(na), tv(nb)}),
                           std::move(t)});
          }
        }
        return out;
      },
      {init});

  // Components.
  std::vector<Value> sign_inputs{tv(MsgTerm::Junk())};
  std::vector<Value> m1_inputs{tv(MsgTerm::Junk())};
  for (const auto& u : st.universe) {
    if (u.is(K::kSign)) sign_inputs.push_back(tv(u));
    if (is_m1_shape(u)) m1_inputs.push_back(tv(u));
  }
  std::vector<Value> env_sends;
  for (int a = 0; a < cfg.agents; ++a) {
    for (int k = 0; k < cfg.max_runs; ++k) {
      using S = AuthLocal;
      // Initiator (a, k).
      {
        const MsgTerm na = auth_nonce(cfg, true, a, k);
        Typing ty;
        std::vector<Value> sends;
        std::vector<Value> commits;
        for (int b : agents) {
          if (b == a) continue;
          sends.push_back(tv(auth_m1(a, b, na)));
          for (const auto& nb : nonces) {
            commits.push_back(Value::Tuple({Value::Int(b), tv(na), tv(nb)}));
          }
        }
        env_sends.insert(env_sends.end(), sends.begin(), sends.end());
        ty.declare("send", sends, {Value()});
        ty.declare("receive", {Value()}, sign_inputs);
        ty.declare("commit", commits, {Value()});
        std::vector<IOEvent<S>> events;
        events.push_back({"send", false,
                          [](const S& s, const Value&, const Value&) { return s.run.stage == 0; },
                          [na](const S& s, const Value& out, const Value&) {
                            S t = s;
                            const MsgTerm m = MsgTerm::from_value(out);
                            t.run = AuthRun{1, m.right().left().agent(), na, std::nullopt};
                            return t;
                          },
                          {"UDP_send", {"m"}, "m", "", "", ""}});
        events.push_back({"receive", false,
                          [](const S&, const Value&, const Value&) { return true; },
                          [](const S& s, const Value&, const Value& in) {
                            S t = s;
                            t.ibuf.insert(MsgTerm::from_value(in));
                            return t;
                          },
                          {"UDP_receive", {}, "", "m", "", "ibuf := ibuf(s) ∪ {m}"}});
        events.push_back(
            {"commit", true,
             [cfg, a, na](const S& s, const Value& out, const Value&) {
               if (s.run.stage != 1) return false;
               const int b = static_cast<int>(out.at(0).as_int());
               if (b != s.run.partner || MsgTerm::from_value(out.at(1)) != na) return false;
               const MsgTerm nb = MsgTerm::from_value(out.at(2));
               return s.ibuf.count(auth_m2(cfg, b, a, na, nb)) > 0;
             },
             [](const S& s, const Value& out, const Value&) {
               S t = s;
               t.run.stage = 2;
               t.run.peer_nonce = MsgTerm::from_value(out.at(2));
               return t;
             },
             {"commit", {"b", "na", "nb"}, "(b, na, nb)", "", "", ""}});
        st.components.push_back(
            {run_index("init", a, k),
             IOGuardedES<S>(std::move(events), std::move(ty), S{}, "(A, k)")});
      }
      // Responder (a, k).
      {
        const MsgTerm nb = auth_nonce(cfg, false, a, k);
        Typing ty;
        std::vector<Value> sends;
        for (int x : agents) {
          if (x == a) continue;
          for (const auto& n : nonces) sends.push_back(tv(auth_m2(cfg, a, x, n, nb)));
        }
        std::sort(sends.begin(), sends.end());
        sends.erase(std::unique(sends.begin(), sends.end()), sends.end());
        env_sends.insert(env_sends.end(), sends.begin(), sends.end());
        ty.declare("send", sends, {Value()});
        ty.declare("receive", {Value()}, m1_inputs);
        // The initiator named in a buffered M1 that justifies sending m2.
        auto justified_by = [cfg, a, nb, agents](const S& s,
                                                 const MsgTerm& m2) -> std::optional<std::pair<int, MsgTerm>> {
          for (const auto& m : s.ibuf) {
            if (!is_m1_shape(m) || m.right().left().agent() != a) continue;
            const int x = m.left().agent();
            if (x == a) continue;
            if (auth_m2(cfg, a, x, m.right().right(), nb) == m2) {
              return std::make_pair(x, m.right().right());
            }
          }
          return std::nullopt;
        };
        std::vector<IOEvent<S>> events;
        events.push_back({"send", false,
                          [justified_by](const S& s, const Value& out, const Value&) {
                            return s.run.stage == 0 &&
                                   justified_by(s, MsgTerm::from_value(out)).has_value();
                          },
                          [justified_by, nb](const S& s, const Value& out, const Value&) {
                            S t = s;
                            const auto j = justified_by(s, MsgTerm::from_value(out));
                            t.run = AuthRun{1, j->first, nb, j->second};
                            return t;
                          },
                          {"UDP_send", {"m"}, "m", "", "", ""}});
        events.push_back({"receive", false,
                          [](const S&, const Value&, const Value&) { return true; },
                          [](const S& s, const Value&, const Value& in) {
                            S t = s;
                            t.ibuf.insert(MsgTerm::from_value(in));
                            return t;
                          },
                          {"UDP_receive", {}, "", "m", "", "ibuf := ibuf(s) ∪ {m}"}});
        st.components.push_back(
            {run_index("resp", a, k),
             IOGuardedES<S>(std::move(events), std::move(ty), S{}, "(B, k)")});
      }
    }
  }
  std::sort(env_sends.begin(), env_sends.end());
  env_sends.erase(std::unique(env_sends.begin(), env_sends.end()), env_sends.end());

  st.env = EventSystem<AuthEnv>(
      [cache, env_sends](const AuthEnv& e) {
        std::vector<Step<AuthEnv>> out;
        out.push_back({skip_event(), e});
        for (const auto& v : env_sends) {
          out.push_back({ev("env_send", {v}), AuthEnv{cache->add(e.ik, MsgTerm::from_value(v))}});
        }
        for (const auto& m : e.ik) out.push_back({ev("env_receive", {tv(m)}), e});
        return out;
      },
      {AuthEnv{init.ik}});

  st.chi_e = {"chi_e", [](const Event& c, const Event& e) -> std::optional<Event> {
                if (is_skip(c)) {
                  return is_skip(e) ? std::optional<Event>(skip_event()) : std::nullopt;
                }
                if (c.params.size() != 3) return std::nullopt;
                const Value& idx = c.params[0];
                if (c.name == "send" && e.name == "env_send" && e.params[0] == c.params[1]) {
                  return ev("send", {idx, c.params[1]});
                }
                if (c.name == "receive" && e.name == "env_receive" &&
                    e.params[0] == c.params[2]) {
                  return ev("receive", {idx, c.params[2]});
                }
                if (c.name == "commit" && is_skip(e)) return ev("commit", {idx, c.params[1]});
                return std::nullopt;
              }};

  st.pi = {"pi", [](const Event& e) {
             if (e.name == "receive" || is_skip(e)) return skip_event();
             const Value& idx = e.params[0];
             const Value& agent = idx.at(1);
             const Value& run = idx.at(2);
             if (e.name == "commit") {
               const Value& out = e.params[1];
               return ev("i_commit", {agent, run, out.at(0), out.at(1), out.at(2)});
             }
             const MsgTerm m = MsgTerm::from_value(e.params[1]);
             if (idx.at(0).as_symbol() == "init") {
               return ev("i_send", {agent, run, Value::Int(m.right().left().agent()),
                                    tv(m.right().right())});
             }
             // Responder send of [nb, na, x]sk(b).
             const MsgTerm& body = m.right();
             return ev("r_respond", {agent, run, Value::Int(body.right().right().agent()),
                                     tv(body.right().left()), tv(body.left())});
           }};

  std::vector<Value> indices;
  for (const auto& c : st.components) indices.push_back(c.index);
  st.relation = {"R_auth", [indices](const AuthState& a,
                                     const std::pair<std::vector<AuthLocal>, AuthEnv>& c) {
                   if (a.ik != c.second.ik) return false;
                   for (std::size_t i = 0; i < indices.size(); ++i) {
                     const auto& idx = indices[i];
                     const RunKey key{static_cast<int>(idx.at(1).as_int()),
                                      static_cast<int>(idx.at(2).as_int())};
                     const auto& runs =
                         idx.at(0).as_symbol() == "init" ? a.initiators : a.responders;
                     if (runs.at(key) != c.first[i].run) return false;
                   }
                   return true;
                 }};

  const int honest = cfg.agents;
  st.agreement = {"injective_agreement", [honest](const Trace& t) {
                    std::map<std::vector<Value>, int> running;
                    for (const auto& e : t) {
                      if (e.name == "r_respond") {
                        // (a, b, na, nb) as seen by responder b.
                        ++running[{e.params[2], e.params[0], e.params[3], e.params[4]}];
                      } else if (e.name == "i_commit") {
                        if (e.params[2].as_int() >= honest) continue;
                        auto& n = running[{e.params[0], e.params[2], e.params[3], e.params[4]}];
                        if (n == 0) return false;
                        --n;
                      }
                    }
                    return true;
                  }};
  return st;
}

EventSystem<std::pair<std::vector<AuthLocal>, AuthEnv>> AuthStack::recompose() const {
  std::vector<FamilyMember<AuthLocal>> family;
  for (const auto& c : components) family.push_back({c.index, c.ges.to_event_system(true)});
  return compose_parallel(interleave_family(std::move(family)), env, chi_e);
}

StateInvariant<AuthState> AuthStack::agreement_on_states() const {
  const int honest = cfg.agents;
  return {"agreement_on_states", [honest](const AuthState& s) {
            using Signal = std::tuple<int, int, MsgTerm, MsgTerm>;
            std::map<Signal, int> running;
            for (const auto& [key, r] : s.responders) {
              if (r.stage >= 1) ++running[{r.partner, key.first, *r.peer_nonce, *r.own_nonce}];
            }
            for (const auto& [key, r] : s.initiators) {
              if (r.stage != 2 || r.partner >= honest) continue;
              if (--running[{key.first, r.partner, *r.own_nonce, *r.peer_nonce}] < 0) {
                return false;
              }
            }
            return true;
          }};
}

StepInvariant<AuthState> AuthStack::ik_monotone() const {
  return {"ik_monotone", [](const AuthState& s, const Event&, const AuthState& t) {
            return std::includes(t.ik.begin(), t.ik.end(), s.ik.begin(), s.ik.end());
          }};
}

}  // namespace igloo
